"""User interface layer for covertctl."""
