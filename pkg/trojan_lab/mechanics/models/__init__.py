"""Models for the trojan_lab mechanics core."""
