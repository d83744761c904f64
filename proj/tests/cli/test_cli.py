"""CLI contract checks: schema, exit codes, config precedence, determinism,
and agreement between text and JSON numbers.

usage: test_cli.py <qauth binary> <report.schema.json>
"""

import json
import os
import re
import subprocess
import sys
import tempfile

import jsonschema

QAUTH, SCHEMA_PATH = sys.argv[1], sys.argv[2]
with open(SCHEMA_PATH, encoding="utf-8") as fh:
    SCHEMA = json.load(fh)
jsonschema.Draft202012Validator.check_schema(SCHEMA)
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)

failures = []


def qauth(*args):
    return subprocess.run([QAUTH, *args], capture_output=True, text=True, timeout=300)


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def json_doc(*args):
    proc = qauth(*args, "--format", "json")
    doc = json.loads(proc.stdout)
    errors = sorted(VALIDATOR.iter_errors(doc), key=lambda e: list(e.path))
    check(not errors, "schema: " + " ".join(args) + ("" if not errors else f" ({errors[0].message})"))
    return proc, doc


# Every command shape validates against the schema.
DOCS = [
    ("run", "kanamori", "--n", "8", "--seed", "1"),
    ("run", "zeng_guo", "--n", "8", "--s", "4", "--seed", "1"),
    ("run", "li_zhang", "--m", "8", "--seed", "2"),
    ("run", "curty_santos", "--m", "2", "--trials", "200", "--adversary", "intercept"),
    ("run", "li_barnum", "--n", "2", "--trials", "200", "--adversary", "impersonate"),
    ("run", "li_zhang", "--m", "2", "--trials", "100", "--adversary", "substitute"),
    ("analyze", "kanamori"),
    ("analyze", "zeng_zhang"),
    ("compare", "barnum_purity", "yang_goppa", "kanamori", "zeng_guo"),
    ("table",),
]
for args in DOCS:
    json_doc(*args)

# Spec examples through the binary.
proc, doc = json_doc("run", "kanamori", "--n", "8", "--seed", "1", "--deterministic")
check(proc.returncode == 0, "run kanamori exits 0")
check(doc["tally"]["qubits_sent"] == 24 and doc["model"] == "Yao", "run kanamori n=8: 24 qubits, Yao")
proc, doc = json_doc("run", "zeng_guo", "--n", "8", "--s", "4", "--seed", "1", "--deterministic")
check(doc["tally"]["classical_bits_sent"] == 20 and doc["model"] == "CleveBuhrman", "run zeng_guo: 20 bits")
_, doc = json_doc("analyze", "li_zhang", "--deterministic")
check(doc["fitted"]["expression"] == "2m" and doc["agreement"] is True, "analyze li_zhang fits 2m")
_, doc = json_doc("table", "--deterministic")
check(len(doc["rows"]) == 10, "table has 10 rows")

# Exit codes.
proc = qauth("run", "barnum_purity", "--m", "8")
check(proc.returncode == 3 and "analyze" in proc.stderr, "accounting-only run exits 3 and points to analyze")
check(qauth("analyze", "nonexistent").returncode == 2, "unknown id exits 2")
check(qauth("compare", "kanamori").returncode == 2, "compare with one id exits 2")
check(qauth("run", "li_zhang", "--adversary", "impersonate").returncode == 3, "data origin impersonation exits 3")
check(qauth("run", "li_zhang", "--m", "1", "--adversary", "substitute").returncode == 1, "detected run exits 1")
check(qauth("run", "kanamori", "--adversary", "bogus").returncode == 2, "bad flag value exits 2")

# Config file: flags beat file values; unknown keys are usage errors.
with tempfile.TemporaryDirectory() as tmp:
    cfg = os.path.join(tmp, "cfg.json")
    with open(cfg, "w", encoding="utf-8") as fh:
        json.dump({"n": 6, "seed": 11, "format": "json", "deterministic": True}, fh)
    doc = json.loads(qauth("run", "kanamori", "--config", cfg, "--n", "3").stdout)
    check(doc["params"]["n"] == 3 and doc["params"]["seed"] == 11, "config fills defaults, flags win")
    check("timestamp" not in doc, "config deterministic suppresses timestamp")
    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w", encoding="utf-8") as fh:
        json.dump({"colour": "blue"}, fh)
    check(qauth("run", "kanamori", "--config", bad).returncode == 2, "unknown config key exits 2")

# Determinism: byte-identical structured output.
for args in DOCS:
    a = qauth(*args, "--format", "json", "--deterministic").stdout
    b = qauth(*args, "--format", "json", "--deterministic").stdout
    check(a == b and "timestamp" not in a, "deterministic: " + " ".join(args))

# Text and JSON report the same numbers.
args = ("run", "zhang_li_guo", "--n", "4", "--trials", "200", "--adversary", "intercept", "--seed", "3",
        "--deterministic")
doc = json.loads(qauth(*args, "--format", "json").stdout)
text = qauth(*args).stdout
rate = doc["rates"]["detection"]
expected = [str(doc["cost"]), json.dumps(rate["point"]), json.dumps(rate["lo"]), json.dumps(rate["hi"]),
            f"({rate['hits']}/{rate['trials']})", json.dumps(doc["rates"]["adversarial_cost"]["restarts"]),
            doc["expression"], doc["rates"]["adversarial_cost"]["notation"]]
check(all(tok in text for tok in expected), "text run report carries the JSON numbers")
tally_text = re.search(r"^tally\s+(.*)$", text, re.M).group(1)
check(tally_text == " ".join(f"{k}={v}" for k, v in doc["tally"].items()), "text tally matches JSON")

doc = json.loads(qauth("compare", "li_zhang", "curty_santos", "--format", "json", "--deterministic").stdout)
text = qauth("compare", "li_zhang", "curty_santos", "--deterministic").stdout
values = [e["reference_value"] for g in doc["groups"] for e in g["entries"]]
check(all(v in text for v in values) and "tied" in text, "text compare matches JSON")

if failures:
    print(f"{len(failures)} check(s) failed")
    sys.exit(1)
print("all CLI checks passed")
