"""Test posecast.fitter."""
