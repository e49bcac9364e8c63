#!/usr/bin/env python3
"""Run the simulator on a scenario and report reallocation diagnostics.

Usage: diagnose.py <scenario.json> [outdir]
"""
import json
import subprocess
import sys
import os

scenario_path = sys.argv[1]
outdir = sys.argv[2] if len(sys.argv) > 2 else "/tmp/diag"
binary = os.environ.get("RELAYNET_BIN", "./build/relaynet")

r = subprocess.run(
    [binary, "run", "--scenario", scenario_path, "--out", outdir,
     "--format", "json", "--quiet"],
    capture_output=True, text=True)
if r.returncode != 0:
    print("RUN FAILED", r.returncode)
    print(r.stdout)
    print(r.stderr)
    sys.exit(1)

with open(os.path.join(outdir, "trace.json")) as f:
    trace = json.load(f)
with open(scenario_path) as f:
    sc = json.load(f)

records = trace["records"]
events = {e["tick"]: e for e in sc["events"]}
event_ticks = sorted(events)

# --- connectivity ---
bad = [rec["tick"] for rec in records if not rec["connected"]]
print(f"connectivity: {'OK (100%)' if not bad else f'BROKEN at {bad[:10]} ({len(bad)} ticks)'}")

# --- commands ---
cmds = []
for rec in records:
    for c in rec["commands"]:
        cmds.append((rec["tick"], c["agent"], c["flow"]))
print(f"commands: {len(cmds)} total")
for t, a, fl in cmds[:60]:
    print(f"  tick {t:6d}: agent {a} -> flow {fl}")
if len(cmds) > 60:
    print(f"  ... and {len(cmds)-60} more")

# windows
for et in event_ticks:
    w = [c for c in cmds if et <= c[0] <= et + 1000]
    print(f"window [{et},{et+1000}]: {len(w)} commands "
          f"{[(c[0], c[1], c[2]) for c in w[:8]]}")

# --- per-flow cost trajectories (sampled) ---
flows = sorted({f["flow"] for rec in records for f in rec["flows"]})
def cost_at(tick, flow):
    rec = records[tick]
    for f in rec["flows"]:
        if f["flow"] == flow:
            return f["cost"] if f["active"] else None
    return None

print("\ncost samples:")
sample = [0, 500, 1000, 2000, 3000, 4000, 4499, 4500, 4600, 4800, 5000,
          5500, 6000, 7000, 8000, 8499, 8500, 8600, 9000, 9500, 10000,
          10500, 11000, 12000, 13000]
hdr = "tick    " + "".join(f"f{fl:<11d}" for fl in flows)
print(hdr)
for t in sample:
    if t >= len(records):
        continue
    row = f"{t:7d} "
    for fl in flows:
        c = cost_at(t, fl)
        row += f"{c:<12.4f}" if c is not None else "--          "
    print(row)

# --- criterion (b): newly activated flow monotone decrease ---
act = [e for e in sc["events"] if e["activate"]]
for e in act:
    fl, et = e["flow"], e["tick"]
    costs = [(rec["tick"], f["cost"]) for rec in records if rec["tick"] >= et
             for f in rec["flows"] if f["flow"] == fl and f["active"]]
    if not costs:
        print(f"flow {fl}: no active records!?")
        continue
    c0 = costs[0][1]
    cend = costs[-1][1]
    worst_rise, worst_tick = 0.0, None
    for (t1, a1), (t2, a2) in zip(costs, costs[1:]):
        rise = a2 - a1
        if rise > worst_rise:
            worst_rise, worst_tick = rise, t2
    print(f"\nflow {fl} after activation: start {c0:.4f} end {cend:.4f} "
          f"({100*(cend-c0)/c0:+.1f}%), worst per-tick rise {worst_rise:.3e}"
          f"{f' at {worst_tick}' if worst_tick else ''}")

# --- criterion (c): survivors before/after deactivation ---
deact = [e for e in sc["events"] if not e["activate"]]
for e in deact:
    fl, et = e["flow"], e["tick"]
    survivors = [f2 for f2 in flows if f2 != fl]
    before = sum(cost_at(et - 1, f2) or 0.0 for f2 in survivors)
    after = sum(cost_at(len(records) - 1, f2) or 0.0 for f2 in survivors)
    print(f"deactivation of {fl} at {et}: survivors total "
          f"{before:.4f} -> {after:.4f} ({100*(after-before)/before:+.1f}%)")

# --- reconfigure / spacing ---
max_sp = max((f["spacing_err"] for rec in records for f in rec["flows"]
              if f["active"]), default=0.0)
rc_ticks = sum(1 for rec in records if rec["reconfigure_count"] > 0)
print(f"\nmax spacing err (active flows): {max_sp:.4f}")
print(f"ticks with RECONFIGURE agents: {rc_ticks}/{len(records)}")
print(f"icp invocations: {sum(1 for rec in records if rec['icp_ran'])}")
