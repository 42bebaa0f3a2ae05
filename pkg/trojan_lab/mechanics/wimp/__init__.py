"""Semi-classical fields, flows and densities."""
