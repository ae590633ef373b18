#!/usr/bin/env python3
"""
linkforge - Command Line Interface
Console script entry point.
"""
import sys
from pathlib import Path

# Ensure the package can be imported from installed location
sys.path.insert(0, str(Path(__file__).parent.parent))


def main():
    """Main entry point for the Typer CLI."""
    try:
        from cli.main import app
    except ImportError as e:
        print(f"❌ Error importing linkforge CLI: {e}", file=sys.stderr)
        sys.exit(1)
    app()


if __name__ == "__main__":
    main()
