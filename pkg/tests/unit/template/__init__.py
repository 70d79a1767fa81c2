"""Test posecast.template."""
