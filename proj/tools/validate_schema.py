#!/usr/bin/env python3
"""Validates JSON documents against docs/schema.json.

Usage: validate_schema.py <schema> <file or directory>...
"""
import json
import pathlib
import sys

import jsonschema


def main() -> int:
    schema = json.loads(pathlib.Path(sys.argv[1]).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    files = []
    for arg in sys.argv[2:]:
        path = pathlib.Path(arg)
        files += sorted(path.glob("*.json")) if path.is_dir() else [path]
    bad = 0
    for f in files:
        for err in validator.iter_errors(json.loads(f.read_text())):
            print(f"{f}: {err.json_path}: {err.message[:200]}")
            bad += 1
            break
    print(f"{len(files) - bad}/{len(files)} documents valid")
    return 1 if bad or not files else 0


if __name__ == "__main__":
    sys.exit(main())
