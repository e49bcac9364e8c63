#!/usr/bin/env python3
"""Generate the reference scenario JSON.

Layout: three flows sharing one arena (9 mobile, 6 static agents).

  north row (flow 16, y=1.78): s10 - [wide gap] - m1 - m2 - m3 - m4 - s11.
      The west span between s10 and m1 is too wide for a direct link; it is
      bridged from below by m5, which doubles as the west flow's relay.  The
      row midpoint falls inside the m1-m2 gap and stays vacant: the gap is
      narrow enough that a newcomer parked at the midpoint can never offer a
      cheaper route than the direct m1-m2 link, so a late arrival becomes a
      silent standby rather than re-wiring the row.
  west flow (flow 17): a short slanted run s12 - m5 - s13 dropping from the
      upper area to just above the middle row.  m5 is the dual-duty agent:
      member of both 16 and 17, held below the north row by its 17 alignment.
      When 17 shuts down, m5 climbs onto the row and both of its row links
      shorten - the post-shutdown cost reduction for the survivors.
  middle row (flow 18, y=0): endpoints s14/s15 4.35 apart with no staffing of
      their own.  A two-agent chain (m6, m7) parked just north of the row
      carries the only affordable path, so activation drafts the chain into
      membership and it settles down onto the row (pure reassignment, no
      movement command).

  Spares:
  - m8 parks far west with a single link to s10, expensive enough that its
      detachment score stays above every attachment score.
  - m9 parks south of s13 with its only member link to s13.  While 17 lives,
      that link prices m9 off the gate; when 17 dies the link stops counting,
      m9's detachment score collapses to zero and the gate fires, sending m9
      on the run's one commanded redeployment (to the north midpoint, where
      it lands as a standby past the reach of any cheaper-route rewiring).

Timeline: flow 18 activates at tick 4500, flow 17 deactivates at tick 8500.
"""
import json
import sys

# ---- tunable geometry (iterated against measured equilibria) ----
Y_ROW = 1.78            # north row line
S10_X = -4.55           # north source (west wall of the wide gap)
S11_X = 2.086           # north destination
ROW = [(-2.03, 1.86), (-1.00, Y_ROW), (0.03, Y_ROW), (1.06, Y_ROW)]  # m1..m4
V_POS = (-3.19, 1.34)   # m5: dual-duty agent below the west span
S12 = (-2.59, 2.50)     # west source, aimed so m5 sits on the 17 segment
S13 = (-3.60, 0.15)     # west destination, anchored to s14
S14 = (-2.175, 0.0)     # middle source
S15 = (2.175, 0.0)      # middle destination
CHAIN = [(-0.725, 0.36), (0.725, 0.36)]  # m6, m7 parks above middle row
M8 = (-5.60, 0.88)      # west spare (single link to s10)
M9 = (-3.30, -1.20)     # south spare (single member link to s13)

scenario = {
    "mobile_count": 9,
    "static_count": 6,
    "mobile_positions": [
        [ROW[0][0], ROW[0][1]],      # 1 m1: row, west flank of the wide gap
        [ROW[1][0], ROW[1][1]],      # 2 m2: row
        [ROW[2][0], ROW[2][1]],      # 3 m3: row
        [ROW[3][0], ROW[3][1]],      # 4 m4: row
        [V_POS[0], V_POS[1]],        # 5 m5: dual-duty relay (16 and 17)
        [CHAIN[0][0], CHAIN[0][1]],  # 6 m6: chain west link
        [CHAIN[1][0], CHAIN[1][1]],  # 7 m7: chain east link
        [M8[0], M8[1]],              # 8 m8: west spare
        [M9[0], M9[1]],              # 9 m9: south spare, redeploys at 8500
    ],
    "static_positions": [
        [S10_X, Y_ROW],              # 10 s10: north source
        [S11_X, Y_ROW],              # 11 s11: north destination
        [S12[0], S12[1]],            # 12 s12: west source
        [S13[0], S13[1]],            # 13 s13: west destination
        [S14[0], S14[1]],            # 14 s14: middle source
        [S15[0], S15[1]],            # 15 s15: middle destination
    ],
    "flows": [
        {"id": 16, "source": 10, "destination": 11, "active": True},
        {"id": 17, "source": 12, "destination": 13, "active": True},
        {"id": 18, "source": 14, "destination": 15, "active": False},
    ],
    "events": [
        {"tick": 4500, "flow": 18, "activate": True},
        {"tick": 8500, "flow": 17, "activate": False},
    ],
    "params": {
        "rho0": 0.2,
        "rho1": 1.5,
        "rho2": 2.0,
        "a": 5.0,
        "b": 1.2,
        "beta": 32.0,
        "eps_w": 0.2,
        "eps_f": 0.2,
        "alpha": 1.0,
        "dt": 0.01,
        "vmax": 0.2,
        "icp_period": 25,
    },
    "max_ticks": 13000,
    "seed": 4242,
}

out = sys.argv[1] if len(sys.argv) > 1 else "scenarios/reference.json"
with open(out, "w") as f:
    json.dump(scenario, f, indent=2)
    f.write("\n")
print(f"wrote {out}")
