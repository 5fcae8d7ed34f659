"""Allow `python -m dualfit ...` to behave like the dualfit script."""

from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
