#!/usr/bin/env python3
"""Exit-code and output contract of the CLI, exercised over the fixture corpus.

Usage: test_cli.py <path-to-bht-binary> <fixtures-dir>
"""

import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
FIXTURES = sys.argv[2]

failures = []


def run(*args, **kwargs):
    return subprocess.run([BIN, *args], capture_output=True, text=True, **kwargs)


def check(name, condition, context=""):
    if condition:
        print(f"ok: {name}")
    else:
        failures.append(name)
        print(f"FAIL: {name}\n{context}")


def fx(name):
    return os.path.join(FIXTURES, name)


def main():
    # exit code 0: clean / true
    r = run("validate", fx("fig3_caller.btype"))
    check("validate clean file exits 0", r.returncode == 0, r.stdout + r.stderr)

    r = run("equal", fx("fig3_caller.btype"), fx("fig3_caller.btype"))
    check("equal X X exits 0", r.returncode == 0, r.stdout + r.stderr)

    # exit code 1: property violated
    r = run("equal", fx("fig3_caller.btype"), fx("fig3_callee.btype"))
    check("equal on different types exits 1", r.returncode == 1, r.stdout + r.stderr)
    check("equal names the differing label", "oldPrtcl" in r.stdout, r.stdout)

    r = run("refine", fx("fig3_caller.btype"), fx("fig3_callee.btype"),
            "--labels", "newPrtcl")
    check("refine over newPrtcl exits 0", r.returncode == 0, r.stdout + r.stderr)

    r = run("refine", fx("fig3_caller.btype"), fx("fig3_callee.btype"))
    check("refine over union exits 1", r.returncode == 1, r.stdout + r.stderr)

    r = run("compat", fx("fig3.bsys"))
    check("compat with witness exits 1", r.returncode == 1, r.stdout + r.stderr)
    check("compat names the witness", "oldPrtcl" in r.stdout and "callee" in r.stdout, r.stdout)

    r = run("deadlock", fx("fig3.bsys"))
    check("deadlock on clean system exits 0", r.returncode == 0, r.stdout + r.stderr)

    r = run("deadlock", fx("booking_two_flights.bsys"))
    check("deadlock on two-flights exits 1", r.returncode == 1, r.stdout + r.stderr)
    check("deadlock prints full-full state", r.stdout.count("full") >= 2, r.stdout)
    check("deadlock prints a trace", "reserve" in r.stdout, r.stdout)

    r = run("synth", fx("fig3.bsys"))
    check("synth solvable exits 0", r.returncode == 0, r.stdout + r.stderr)
    check("synth prints the priority", "oldPrtcl < newPrtcl" in r.stdout, r.stdout)

    r = run("synth", fx("booking_two_flights.bsys"))
    check("synth unsolvable exits 1", r.returncode == 1, r.stdout + r.stderr)

    # --json parses and matches the model-io envelope
    r = run("deadlock", fx("booking_two_flights.bsys"), "--json")
    check("deadlock --json exits 1", r.returncode == 1, r.stderr)
    try:
        doc = json.loads(r.stdout)
        check("deadlock --json is a verdict document",
              doc["kind"] == "verdict" and doc["format_version"] == 1, r.stdout[:200])
        check("deadlock --json carries deadlocks", len(doc["deadlocks"]) >= 1, r.stdout[:200])
    except json.JSONDecodeError as e:
        check("deadlock --json parses", False, str(e))

    r = run("synth", fx("fig3.bsys"), "--json")
    try:
        doc = json.loads(r.stdout)
        check("synth --json is a synthesis_result", doc["kind"] == "synthesis_result",
              r.stdout[:200])
    except json.JSONDecodeError as e:
        check("synth --json parses", False, str(e))

    # exit code 2: usage and IO errors
    r = run("validate", fx("does_not_exist.btype"))
    check("missing file exits 2", r.returncode == 2, r.stdout + r.stderr)

    r = run("deadlock", fx("fig3_caller.btype"))
    check("wrong document kind exits 2", r.returncode == 2, r.stdout + r.stderr)

    r = run()
    check("no subcommand is a usage error", r.returncode != 0, r.stdout + r.stderr)

    # pipeline commands write loadable canonical documents
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "normal.btype")
        r = run("normalize", fx("fig3_caller.btype"), "-o", out)
        check("normalize writes a file", r.returncode == 0 and os.path.exists(out), r.stderr)
        r = run("validate", out)
        check("normalized file validates", r.returncode == 0, r.stdout + r.stderr)

        r = run("normalize", out)
        with open(out) as f:
            check("normalize is idempotent through the CLI", r.stdout == f.read(), "")

        out2 = os.path.join(tmp, "complete.btype")
        r = run("complete", fx("fig3_callee.btype"), "--alphabet", fx("fig3_caller.btype"),
                "-o", out2)
        check("complete writes a file", r.returncode == 0, r.stderr)
        with open(out2) as f:
            check("complete adds the error location", "__error" in f.read(), "")

        r = run("minimize", out2)
        check("minimize runs on completed input", r.returncode == 0, r.stdout + r.stderr)

        # simulate: seeded determinism and monitor wiring
        log1 = os.path.join(tmp, "run1.log")
        log2 = os.path.join(tmp, "run2.log")
        r = run("simulate", fx("booking.osys"), "--seed", "9", "--steps", "120", "-o", log1)
        check("simulate exits 0", r.returncode == 0, r.stderr)
        run("simulate", fx("booking.osys"), "--seed", "9", "--steps", "120", "-o", log2)
        with open(log1) as f1, open(log2) as f2:
            check("same seed, same log", f1.read() == f2.read(), "")

        r = run("monitor", log1, "booking/mw1", fx("middleware_outgoing.btype"))
        check("monitor conformant exits 0", r.returncode == 0, r.stdout + r.stderr)

        vlog = os.path.join(tmp, "violation.log")
        r = run("simulate", fx("monitor_violation.osys"), "--script",
                fx("monitor_violation.bscript"), "-o", vlog)
        check("scripted simulate exits 0", r.returncode == 0, r.stderr)
        r = run("monitor", vlog, "shop/mw", fx("middleware_outgoing.btype"))
        check("monitor violation exits 1", r.returncode == 1, r.stdout + r.stderr)
        check("monitor names the event", "violation at event" in r.stdout, r.stdout)

    r = run("simulate", fx("two_interleavings.osys"), "--exhaustive", "--depth", "10")
    check("exhaustive simulate exits 0", r.returncode == 0, r.stdout + r.stderr)
    check("exhaustive reports two maximal traces", "maximal traces: 2" in r.stdout, r.stdout)

    env = dict(os.environ, BHT_FIXTURES=FIXTURES)
    r = subprocess.run([BIN, "demo", "booking"], capture_output=True, text=True, env=env)
    check("demo booking exits 0", r.returncode == 0, r.stdout + r.stderr)
    check("demo shows the chosen branch", "chosen branch: newPrtcl" in r.stdout, r.stdout)
    check("demo shows the deadlock", "deadlock" in r.stdout, r.stdout)

    if failures:
        print(f"\n{len(failures)} CLI check(s) failed")
        return 1
    print("\nall CLI checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
