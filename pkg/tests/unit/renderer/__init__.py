"""Test posecast.renderer."""
