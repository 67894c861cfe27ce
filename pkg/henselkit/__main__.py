"""Entry point so ``python -m henselkit`` matches the CLI binary."""

from henselkit.henselkit import main

if __name__ == "__main__":
    main()
