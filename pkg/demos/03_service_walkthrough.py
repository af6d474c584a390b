"""
Drive the HTTP case service end to end
=======================================

The browser UI talks to the service exactly like this: create a case,
upload a slide, push pipeline steps, commit a measurement, generate the
report. Here the app runs in-process; point the same calls at
`mammoseg serve` for a network deployment.
"""

import tempfile

import numpy as np
from fastapi.testclient import TestClient

import mammoseg as ms
from mammoseg.service import create_app

# %% Boot the service over a scratch case directory.
data_dir = tempfile.mkdtemp(prefix="mammoseg-demo-")
client = TestClient(create_app(data_dir))
print("case data under", data_dir)

# %% Open a case for a patient.
case_id = client.post(
    "/cases", json={"patient_id": "demo-42", "name": "Demo Patient", "age_years": 48}
).json()["case_id"]
print("case:", case_id)

# %% Upload a synthetic slide as binary PGM.
slide = np.full((96, 96), 30, dtype=np.uint8)
ys, xs = np.ogrid[:96, :96]
slide[(ys - 48) ** 2 + (xs - 48) ** 2 <= 20 ** 2] = 210
resp = client.post(f"/cases/{case_id}/image", content=ms.write_pgm(slide))
print("uploaded:", resp.json())

# %% Push the pipeline buttons one by one (or POST run-default-pipeline).
for step in ("median", "otsu", "morph-open", "morph-close", "watershed", "components"):
    out = client.post(f"/cases/{case_id}/steps/{step}").json()
    print(f"step {step}:", out)

# %% Every intermediate is fetchable as PGM bytes; the histogram as JSON.
stage = client.get(f"/cases/{case_id}/stages/otsu")
print("otsu stage:", stage.headers["content-type"], len(stage.content), "bytes")
hist = client.get(f"/cases/{case_id}/histogram").json()
print("histogram bins > 0:", sum(1 for c in hist if c))

# %% Commit an automatic measurement at 0.03 cm/px.
measurement = client.post(
    f"/cases/{case_id}/measurement", json={"mode": "auto", "cm_per_pixel": 0.03}
).json()
print("measurement:", measurement)

# %% Generate the report; fetching again with generate=false returns the
# stored document unchanged.
report = client.get(f"/cases/{case_id}/report", params={"generate": "true"}).json()
print("report type/stage:", report["tumor_type"], "/", report["risk_stage"])
print("t-category:", report.get("t_category"))

stored = client.get(f"/cases/{case_id}/report", params={"generate": "false"}).json()
print("stored copy identical:", stored == report)

# %% A manual line measurement behaves like the draggable distance tool.
manual = client.post(
    f"/cases/{case_id}/measurement",
    json={"mode": "manual", "cm_per_pixel": 0.03,
          "line": {"x1": 28.0, "y1": 48.0, "x2": 68.0, "y2": 48.0}},
).json()
print("manual 40 px line:", manual)
