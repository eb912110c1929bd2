"""Validates a report JSON file against the published schema."""
import json
import sys

import jsonschema

schema_path, report_path = sys.argv[1], sys.argv[2]
with open(schema_path) as fh:
    schema = json.load(fh)
with open(report_path) as fh:
    report = json.load(fh)
jsonschema.Draft202012Validator.check_schema(schema)
jsonschema.validate(report, schema, cls=jsonschema.Draft202012Validator)
print(f"{report_path}: valid ({len(report['checks'])} checks)")
