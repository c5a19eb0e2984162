#!/usr/bin/env python3
"""
Prerequisites Setup

Checks that the Python packages the miners need are importable and that a
.env file exists (creating it from .env.example when missing).
"""

import argparse
import shutil
import subprocess
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parent.parent

# import name -> requirements.txt name
REQUIRED_PACKAGES = {
    "numpy": "numpy",
    "dotenv": "python-dotenv",
    "yaml": "PyYAML",
}


def print_header():
    """Print the prerequisites header."""
    print("=" * 60)
    print("PREREQUISITES SETUP")
    print("=" * 60)
    print()


def check_env_file() -> bool:
    """Check for .env and create it from .env.example if it is missing."""
    env_file = PROJECT_ROOT / ".env"
    example = PROJECT_ROOT / ".env.example"

    if env_file.exists():
        print("✓ .env file found")
        return True
    if example.exists():
        shutil.copyfile(example, env_file)
        print("✓ Created .env from .env.example (edit it to change the defaults)")
        return True
    print("✗ .env file not found and no .env.example to copy")
    return False


def check_python_dependencies(install: bool) -> bool:
    """Check the required packages, optionally installing requirements.txt."""
    print("Checking Python package dependencies...")
    print()

    missing = []
    for module, package in REQUIRED_PACKAGES.items():
        try:
            __import__(module)
            print(f"✓ {package} is installed")
        except ImportError:
            print(f"✗ {package} is not installed")
            missing.append(package)

    if not missing:
        return True
    if not install:
        print(f"\nInstall with: {sys.executable} -m pip install -r requirements.txt")
        return False

    print(f"\nInstalling missing Python packages: {', '.join(missing)}")
    try:
        result = subprocess.run(
            [sys.executable, "-m", "pip", "install", "-r", str(PROJECT_ROOT / "requirements.txt")],
            capture_output=True,
            text=True,
        )
    except OSError as e:
        print(f"✗ Error installing Python dependencies: {e}")
        return False
    if result.returncode != 0:
        print(f"✗ Failed to install Python dependencies: {result.stderr}")
        return False
    print("✓ Successfully installed Python dependencies")
    return True


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Check the environment for the miners")
    parser.add_argument("--install", action="store_true", help="pip install missing packages")
    args = parser.parse_args(argv)

    print_header()
    print(f"Python {sys.version.split()[0]} at {sys.executable}")
    print()

    env_ok = check_env_file()
    print()
    deps_ok = check_python_dependencies(args.install)
    print()

    if env_ok and deps_ok:
        print("✓ All prerequisites are met!")
        print()
        print("You can now proceed to:")
        print("  python main.py generate --length 100 --alphabet 10 --seed 1")
        print("  python main.py mine --input sequences/example3.seq --threshold 2")
        print("  python main.py verify --trials 500")
        print("  python main.py bench --profile incremental-vs-naive")
        return 0

    print("Please fix the items marked ✗ above and run this script again.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
