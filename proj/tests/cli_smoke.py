#!/usr/bin/env python3
"""CLI smoke tests: exit codes, JSON shape, and byte-level determinism."""
import json
import subprocess
import sys

MCOAL = sys.argv[1]
failures = 0


def run(*args, expect_rc=0):
    global failures
    proc = subprocess.run([MCOAL, *args], capture_output=True, text=True)
    if proc.returncode != expect_rc:
        failures += 1
        print(f"FAIL rc={proc.returncode} (want {expect_rc}): {' '.join(args)}")
        print(proc.stderr.strip())
    return proc


def check(ok, label):
    global failures
    if not ok:
        failures += 1
    print(f"{'ok' if ok else 'FAIL'}: {label}")


# rates: Kingman table has lambda_{5,2} = 1 and zero for k > 2
out = json.loads(run("rates", "--lambda1", "dirac0:1", "--b", "5").stdout)
check(abs(out["lambda"]["2"] - 1.0) < 1e-12, "rates lambda_{5,2} = 1")
check(all(abs(out["lambda"][k]) < 1e-12 for k in ("3", "4", "5")), "rates lambda_{5,k>2} = 0")
check(out["config"]["lambda1"] == "dirac0:1" and out["config"]["b"] == 5,
      "rates embeds the resolved config")

# determinism: identical argv+seed -> identical bytes; different seed differs
args = ["simulate", "--lambda0", "dirac0:1", "--lambda1", "dirac0:1",
        "--n", "6", "--replicas", "3", "--seed", "11"]
a, b = run(*args).stdout, run(*args).stdout
check(a == b and len(a) > 0, "simulate is byte-deterministic for a fixed seed")
c = run(*args[:-1], "12").stdout
check(a != c, "different seeds give different trajectories")

# cdi-check verdicts
out = json.loads(run("cdi-check", "--lambda1", "uniform:1").stdout)
check(out["verdict"] == "DoesNotComeDown", "cdi-check uniform -> DoesNotComeDown")
out = json.loads(run("cdi-check", "--lambda1", "dirac0:1").stdout)
check(out["verdict"] == "ComesDown", "cdi-check Kingman -> ComesDown")

# gfvi final state mass
out = json.loads(run("gfvi", "--nu0", "dirac:0.3:1", "--nu1", "dirac:0.5:2",
                     "--t", "2", "--seed", "5").stdout)
final = out["final"]
mass = final["w0"] + final["lebesgue"] + sum(w for _, w in final["atoms"])
check(abs(mass - 1.0) < 1e-9, "gfvi final state has mass 1")

# error paths: parse failure and missing seed are nonzero exits
run("rates", "--lambda1", "nope:1", "--b", "4", expect_rc=1)
check(True, "measure parse error exits nonzero")
proc = subprocess.run([MCOAL, "simulate", "--lambda1", "dirac0:1", "--n", "3"],
                      capture_output=True, text=True)
check(proc.returncode != 0, "simulate without --seed exits nonzero")

sys.exit(1 if failures else 0)
