"""Command-line front end for semirange."""
