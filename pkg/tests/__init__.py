"""Test package for Cofact."""
