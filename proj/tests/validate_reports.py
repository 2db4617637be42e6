"""Run each reporting command of the exg binary and validate its JSON
output against the report schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def run(exe, *args):
    proc = subprocess.run([exe, *args], capture_output=True, text=True)
    if proc.returncode != 0:
        sys.exit(f"exg {' '.join(args)} exited {proc.returncode}: {proc.stderr}")
    return proc.stdout


def main():
    exe, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    validator.check_schema(schema)

    with tempfile.TemporaryDirectory() as tmp:
        data = str(Path(tmp) / "rt.txt")
        skewed = str(Path(tmp) / "skewed.txt")
        run(exe, "sample", "--n", "2000", "--mu", "451.09", "--sigma", "47.33",
            "--tau", "146.81", "--seed", "1", "--out", data)
        lines = Path(data).read_text() + "".join(f"{6000 + 100 * i}\n" for i in range(8))
        Path(skewed).write_text(lines)

        reports = {
            "fit": run(exe, "fit", data),
            "fit-partial": run(exe, "fit", skewed, "--method", "stat,maxlkhd"),
            "fit-bins": run(exe, "fit", data, "--method", "minsqr", "--bins", "40"),
            "quantile": run(exe, "quantile", "--mu", "451.09", "--sigma", "47.33",
                            "--tau", "146.81", "--alpha", "0.001", "--format", "json"),
            "gof": run(exe, "gof", data, "--replicates", "5", "--seed", "3"),
            "gof-minsqr": run(exe, "gof", data, "--method", "minsqr", "--replicates", "5"),
            "trim": run(exe, "trim", data),
            "trim-right": run(exe, "trim", data, "--no-left-cut", "--tail", "0.01"),
        }
        failures = 0
        for name, text in reports.items():
            errors = list(validator.iter_errors(json.loads(text)))
            for e in errors:
                print(f"{name}: {e.json_path}: {e.message}")
            failures += len(errors)
            print(f"{name}: {'ok' if not errors else 'INVALID'}")
        partial = json.loads(reports["fit-partial"])["results"]
        if partial["stat"]["status"] != "failed":
            print("fit-partial: expected stat to fail on skew > 2")
            failures += 1
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
