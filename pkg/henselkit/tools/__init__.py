"""Command surfaces, one package per tool."""
