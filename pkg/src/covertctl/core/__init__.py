"""Core simulation, detection and analysis layers for covertctl."""
