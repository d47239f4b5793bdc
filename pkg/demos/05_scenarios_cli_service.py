"""Scenario files, the shared dispatch, and the HTTP service.

Decision criteria are governance artifacts, so they travel as strict JSON
documents. The same validated scenario drives the library, the qdm CLI and
the JSON service, which by construction emit identical tables.
"""

import json
import threading
from pathlib import Path
from urllib.request import Request, urlopen

from qdm import ScenarioError, emit, load_scenario, parse_table, run, scenario_to_dict
from qdm.service import build_server

scenarios_dir = Path(__file__).resolve().parent.parent / "scenarios"
path = scenarios_dir / "example_a.json"

scenario = load_scenario(path)
print(f"Loaded {path.name}: sigma {scenario.endpoint.sigma}, "
      f"{scenario.endpoint.n_treatment}/arm, framework "
      f"{type(scenario.framework).__name__}")
print(f"  content hash {scenario.sha256[:16]}..., seed {scenario.mc.seed}\n")

# Strictness: misconfigured criteria are rejected with located diagnostics.
broken = json.loads(path.read_text())
broken["framework"]["tv"] = 1.0
broken["design_prior"].pop("spread_interpretation")
try:
    load_scenario(broken)
except ScenarioError as err:
    print("A broken variant is rejected with located diagnostics:")
    for diagnostic in err.diagnostics:
        print(f"  {diagnostic}")
    print()

# One dispatch for every command; tables carry provenance.
table = run("thresholds", scenario)
row = dict(zip(table.columns, table.rows[0]))
print(f"thresholds: GO above {row['c_go']:.2f}, STOP below {row['c_stop']:.2f} "
      f"({row['method']})")

csv_text = emit(run("oc", scenario), "csv").decode()
print("\nFirst lines of the oc table as CSV:")
for line in csv_text.splitlines()[:8]:
    print(f"  {line}")

# json emission round-trips bit-exactly.
blob = emit(table, "json")
assert emit(parse_table(blob), "json") == blob
print("\njson emission round-trips bit-exactly through parse_table")

# Scenario re-emission round-trips too.
assert load_scenario(scenario_to_dict(scenario)) == scenario
print("scenario re-emission reloads to an equal value")

# The service returns the same bytes the CLI would print.
server = build_server("127.0.0.1", 0)
thread = threading.Thread(target=server.serve_forever, daemon=True)
thread.start()
host, port = server.server_address
try:
    request = Request(f"http://{host}:{port}/v1/oc", data=path.read_bytes(),
                      headers={"Content-Type": "application/json"})
    with urlopen(request, timeout=30) as reply:
        body = reply.read()
    assert body == emit(run("oc", scenario), "json")
    print(f"\nPOST /v1/oc on 127.0.0.1:{port} returned "
          f"{len(body)} bytes, byte-identical to the CLI output")
    with urlopen(f"http://{host}:{port}/v1/health", timeout=30) as reply:
        print(f"GET /v1/health -> {reply.read().decode()}")
finally:
    server.shutdown()
    server.server_close()
    thread.join(timeout=5)
