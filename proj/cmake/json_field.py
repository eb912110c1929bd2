"""Checks one field of a JSON file: json_field.py FILE dotted.key OP VALUE (OP: == <= >= abs<=)."""
import json
import sys

path, key, op, expected = sys.argv[1:5]
value = json.load(open(path))
for part in key.split("."):
    value = value[part]
expected = json.loads(expected)
ok = {
    "==": lambda: value == expected,
    "<=": lambda: value <= expected,
    ">=": lambda: value >= expected,
    "abs<=": lambda: abs(value) <= expected,
}[op]()
print(f"{key} = {value!r} {op} {expected!r}: {'ok' if ok else 'FAILED'}")
sys.exit(0 if ok else 1)
