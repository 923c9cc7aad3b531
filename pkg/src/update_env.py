#!/usr/bin/env python3
"""
Script to update the .env file with archgroups configuration values.
"""

import os
from fractions import Fraction

import dotenv

from config import ENV_DEFAULTS, MAX_REFINE_CAP

ENV_FILE = ".env"


def validate(key, value):
    """Return an error message for a bad value, or None"""
    if key in ('ARCHGROUPS_REFINE_CAP', 'ARCHGROUPS_SEARCH_HEIGHT', 'ARCHGROUPS_SEPARATION_CAP'):
        try:
            if int(value) < 0:
                return f"{key} must be non-negative"
            if key == 'ARCHGROUPS_REFINE_CAP' and int(value) > MAX_REFINE_CAP:
                return f"{key} must be at most {MAX_REFINE_CAP}"
        except ValueError:
            return f"{key} must be an integer"
    if key == 'ARCHGROUPS_EPS':
        try:
            if Fraction(value) <= 0:
                return f"{key} must be positive"
        except (ValueError, ZeroDivisionError):
            return f"{key} must be a rational such as 1/1000000"
    if key == 'ARCHGROUPS_LOG_LEVEL' and value.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR'):
        return f"{key} must be DEBUG, INFO, WARNING or ERROR"
    return None


def read_env(path=ENV_FILE):
    if not os.path.exists(path):
        return {}
    return {k: v for k, v in dotenv.dotenv_values(path).items() if v is not None}


def write_env(env_vars, path=ENV_FILE):
    with open(path, "w") as f:
        for key, value in env_vars.items():
            f.write(f"{key}={value}\n")


def main():
    """Update .env file with user input values"""
    print("=" * 50)
    print("  archgroups Configuration Updater")
    print("=" * 50)

    env_vars = read_env()
    if not env_vars:
        print("No .env file found. Creating a new one.")

    print("\nCurrent configuration values:")
    for key, default in ENV_DEFAULTS.items():
        print(f"{key}: {env_vars.get(key, f'{default} (default)')}")

    print("\nEnter new values (press Enter to keep current values):")
    for key, default in ENV_DEFAULTS.items():
        value = input(f"{key} [{env_vars.get(key, default)}]: ").strip()
        if not value:
            continue
        error = validate(key, value)
        if error:
            print(f"⚠️  {error}; keeping the current value")
            continue
        env_vars[key] = value

    write_env(env_vars)

    print("\nConfiguration updated successfully!")
    print("You can now run the CLI with:")
    print("python src/main.py --help")


if __name__ == "__main__":
    main()
