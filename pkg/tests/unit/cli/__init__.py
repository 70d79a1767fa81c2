"""Test posecast.cli."""
