"""Main entry point for the CLI."""
from .commands import cli

if __name__ == '__main__':
    cli()
