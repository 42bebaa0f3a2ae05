"""Tests for the mechanics core."""
