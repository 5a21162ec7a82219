"""Elicitation session walkthrough against the HTTP service.

Runs the new-asset workflow in-process: create a session holding the
estimated pairwise values among three observed assets, then fix the value
linking the new fourth asset to the first one and watch the bounds on the
remaining two entries contract.  Uses the test client so no port is opened;
point a real client at `python -m concord.service` for the same flow.
"""

from fastapi.testclient import TestClient

from concord.service import create_app

app = create_app(data_dir="/tmp/concord-demo-sessions")
client = TestClient(app)

constraints = [
    {"label": [1, 2], "value": 0.639, "provenance": "estimated"},
    {"label": [1, 3], "value": 0.666, "provenance": "estimated"},
    {"label": [2, 3], "value": 0.681, "provenance": "estimated"},
]
doc = client.post("/v1/sessions", json={"d": 4, "constraints": constraints}).json()
sid = doc["session_id"]
print("session", sid, "feasible:", doc["feasible"])


def show_bounds(doc, labels):
    pairs = {tuple(t): (lo, hi) for t, lo, hi in zip(
        doc["bounds"]["targets"], doc["bounds"]["lower"], doc["bounds"]["upper"])}
    for label in labels:
        lo, hi = pairs[label]
        tau_lo, tau_hi = 2 * lo - 1, 2 * hi - 1
        print(f"  tau_{label}: [{tau_lo:+.3f}, {tau_hi:+.3f}]")


print("bounds before fixing anything:")
show_bounds(doc, [(1, 4), (2, 4), (3, 4)])

print("fix tau_(1,4) = 0.598 ...")
doc = client.post(
    f"/v1/sessions/{sid}/constraints", json={"label": [1, 4], "tau": 0.598}
).json()
print("bounds after:")
show_bounds(doc, [(2, 4), (3, 4)])

print("try an infeasible value for tau_(2,4):")
resp = client.post(
    f"/v1/sessions/{sid}/constraints", json={"label": [2, 4], "tau": -0.99}
)
print("  status", resp.status_code, "->", resp.json()["message"][:60], "...")
print("  violated interval:", resp.json()["detail"])

print("the grid is unchanged:")
doc = client.get(f"/v1/sessions/{sid}").json()
print("  constraints:", [(c["label"], round(c["value"], 3)) for c in doc["constraints"]])

print("vertices of the current polytope, projected onto the two open pairs:")
body = dict(doc["signature"])
body["targets"] = [[2, 4], [3, 4]]
verts = client.post("/v1/vertices", json=body).json()
for point in verts["projection"][:6]:
    print("  kappa:", [round(x, 4) for x in point])
print(f"  ({len(verts['vertices'])} vertices in total)")
