"""Command line interface for gtame."""
