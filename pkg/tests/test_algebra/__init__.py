"""Tests for algebra module."""
