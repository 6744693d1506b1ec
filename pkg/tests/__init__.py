"""Tests for gtame."""
