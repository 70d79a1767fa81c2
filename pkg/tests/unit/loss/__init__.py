"""Test posecast.loss."""
