"""Test posecast.autodiff."""
