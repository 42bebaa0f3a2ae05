"""Tests for the trojan_lab command line."""
