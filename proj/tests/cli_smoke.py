"""Exit codes and a few literal outputs of the meshpat CLI.

usage: cli_smoke.py <meshpat binary>
"""
import json
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
bad = 0


def run(*args, env=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env)


def expect(label, r, code, stdout=None):
    global bad
    ok = r.returncode == code and (stdout is None or r.stdout == stdout)
    print(("ok  " if ok else "FAIL"), label, f"(exit {r.returncode})")
    if not ok:
        print(r.stdout[:400], r.stderr[:400])
        bad += 1


expect("count 231: in 32154", run("count", "--pattern", "231:", "--perm", "32154"), 0, "0\n")
expect("count 12: in 2413", run("count", "--pattern", "12:", "--perm", "2413"), 0, "3\n")

r = run("classify", "--depth", "7", "--json")
expect("classify depth 7", r, 0)
if r.returncode == 0 and json.loads(r.stdout)["distribution_classes"] != 105:
    print("FAIL classify: distribution_classes != 105")
    bad += 1

expect("verify-bijections bij75", run("verify-bijections", "--name", "bij75", "--depth", "6"), 0)
r = run("verify-bijections", "--name", "bij75", "--depth", "6", "--inject-fault", "--seed", "11")
expect("seeded fault", r, 1)
if "counterexample" not in r.stdout:
    print("FAIL seeded fault: no counterexample printed")
    bad += 1

expect("unknown flag", run("count", "--pattern", "12:", "--perm", "12", "--frobnicate"), 2)
expect("no subcommand", run(), 2)
expect("bad pattern literal", run("count", "--pattern", "12:33", "--perm", "12"), 2)
expect("depth past guard", run("distribution", "--pattern", "12:", "--depth", "10"), 3)
expect("guard lowered", run("avoidance", "--pattern", "12:", "--depth", "5", "--max-depth", "4"), 3)
expect("unknown bijection", run("bijection", "--name", "nope", "--perm", "12"), 2)

r = run("bijection", "--name", "bij73", "--perm", "8,2,9,7,10,6,4,3,1,5")
expect("bijection subcommand", r, 0)
if "7,1,9,8,10,6,3,4,2,5" not in r.stdout:
    print("FAIL bijection subcommand output")
    bad += 1

with tempfile.TemporaryDirectory() as d:
    import os
    env = dict(os.environ, MESHPAT_CACHE_DIR=d)
    a = run("regen-appendix", "--depth", "6", env=env)
    b = run("regen-appendix", "--depth", "6", env=env)  # served from the cache
    expect("regen-appendix", a, 0)
    same = a.stdout == b.stdout and a.stdout.startswith("class_id,n,k,count\n")
    if not same or not os.path.exists(os.path.join(d, "distributions.jsonl")):
        print("FAIL regen-appendix: cached rerun differs or cache missing")
        bad += 1

sys.exit(1 if bad else 0)
