"""Test posecast.io."""
