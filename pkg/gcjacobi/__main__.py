"""Allow `python -m gcjacobi`."""

from gcjacobi.cli import main

if __name__ == "__main__":
    main()
