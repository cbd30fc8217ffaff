"""Tests for classify module."""
