"""Test posecast.geometry."""
