"""Tests for abnormal module."""
