"""Utility helpers for covertctl."""
