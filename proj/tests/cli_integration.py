# Copyright 2026 The qgame Authors.

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the qgame binary.

usage: cli_integration.py QGAME DOCS_DIR {exit_codes,determinism,schema}
"""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema


def run(qgame, *args):
    p = subprocess.run([qgame, *args], capture_output=True, timeout=120)
    return p.returncode, p.stdout, p.stderr


def expect(cond, msg):
    if not cond:
        print("FAIL:", msg)
        sys.exit(1)


def exit_codes(qgame, docs, tmp):
    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w") as f:
        f.write('{\n  "grid": {\n    "q_min": -20,\n    "q_max" 20\n  }\n}\n')
    cases = [
        (0, ["verify"]),
        (0, ["verify", "--only", "hnh"]),
        (0, ["newcomb", "--breaker", "qutrojan", "--control", "0"]),
        (0, ["gamble", "--trials", "2000"]),
        (0, ["walk", "--n-max", "5", "--trials", "2000"]),
        (0, ["market", os.path.join(docs, "gaussian.json")]),
        (0, ["qfa", os.path.join(docs, "qfa_not.json"), "--word", "NOT"]),
        (2, []),
        (2, ["frobnicate"]),
        (2, ["walk", "--trials", "0"]),
        (2, ["walk", "--n-max", "0"]),
        (2, ["gamble", "--p-verify", "1.5"]),
        (2, ["gamble", "--trials", "0"]),
        (2, ["newcomb", "--breaker", "hammer"]),
        (2, ["verify", "--only", "no_such_check"]),
        (2, ["market", bad]),
        (2, ["market", os.path.join(docs, "gaussian.json"), "--grid", "100"]),
        (2, ["market", os.path.join(tmp, "missing.json")]),
        (2, ["qfa", os.path.join(docs, "qfa_not.json"), "--word", "Z"]),
        (2, ["--output", "yaml", "verify"]),
    ]
    for want, args in cases:
        code, _, err = run(qgame, *args)
        expect(code == want, f"{args}: exit {code}, wanted {want}; stderr {err!r}")
    _, _, err = run(qgame, "market", bad)
    expect(b"bad.json:4:" in err, f"parse error should name line 4: {err!r}")
    # a check failure exits 1: a coarse grid that clips the state
    coarse = os.path.join(tmp, "coarse.json")
    with open(coarse, "w") as f:
        json.dump({"grid": {"q_min": -6, "q_max": 6, "n_points": 64},
                   "strategy": {"type": "samples", "re": [1.0] * 64, "im": [0.0] * 64}}, f)
    code, out, _ = run(qgame, "market", coarse)
    expect(code == 1, f"clipped strategy: exit {code}, wanted 1")
    failing = [c for c in json.loads(out)["checks"] if c["status"] == "fail"]
    expect(failing and all(c["max_deviation"] is not None for c in failing), "failing checks carry deviations")


def determinism(qgame, docs, tmp):
    commands = [
        ["--seed", "11", "gamble", "--theta", "0.3", "--p-verify", "0.4", "--reward", "2", "--sweep",
         "--trials", "20000"],
        ["--seed", "11", "walk", "--trials", "50000"],
        ["--seed", "11", "newcomb", "--p-not", "0.3", "--trials", "5000"],
        ["--seed", "11", "verify"],
        ["market", os.path.join(docs, "gaussian.json")],
    ]
    for args in commands:
        for fmt in ("json", "csv", "text"):
            outs = []
            for k in range(2):
                path = os.path.join(tmp, f"r{k}.{fmt}")
                code, _, err = run(qgame, "--output", fmt, "--out", path, *args)
                expect(code == 0, f"{args}: exit {code}: {err!r}")
                with open(path, "rb") as f:
                    outs.append(f.read())
            expect(outs[0] == outs[1], f"{args} --output {fmt}: outputs differ")
    # a different seed changes sampled output
    _, a, _ = run(qgame, "--seed", "1", "walk", "--trials", "5000")
    _, b, _ = run(qgame, "--seed", "2", "walk", "--trials", "5000")
    expect(a != b, "seed has no effect on walk")
    # the Wigner CSV is reproducible too
    w = []
    for k in range(2):
        path = os.path.join(tmp, f"w{k}.csv")
        run(qgame, "market", os.path.join(docs, "gaussian.json"), "--wigner", path)
        with open(path, "rb") as f:
            w.append(f.read())
    expect(w[0] == w[1] and w[0].startswith(b"p\\q,"), "wigner csv")


def schema(qgame, docs, tmp):
    with open(os.path.join(docs, "report.schema.json")) as f:
        sch = json.load(f)
    jsonschema.Draft202012Validator.check_schema(sch)
    commands = [
        ["verify"],
        ["verify", "--only", "hnh"],
        ["--timing", "newcomb", "--trials", "100"],
        ["gamble", "--sweep", "--trials", "1000"],
        ["walk", "--trials", "1000"],
        ["market", os.path.join(docs, "gaussian.json")],
        ["qfa", os.path.join(docs, "qfa_not.json"), "--word", "H H"],
    ]
    for args in commands:
        code, out, err = run(qgame, *args)
        expect(code == 0, f"{args}: exit {code}: {err!r}")
        report = json.loads(out)
        jsonschema.validate(report, sch, cls=jsonschema.Draft202012Validator)
        expect(report["passed"] is True, f"{args}: report not passed")
        for t in report["tables"]:
            for row in t["rows"]:
                expect(len(row) == len(t["columns"]), f"{args}: ragged table {t['name']}")
    _, out, _ = run(qgame, "--timing", "verify", "--only", "hnh")
    expect("wall_time" in json.loads(out), "--timing adds wall_time")
    _, out, _ = run(qgame, "verify", "--only", "hnh")
    expect("wall_time" not in json.loads(out), "wall_time only with --timing")
    _, out, _ = run(qgame, "market", os.path.join(docs, "gaussian.json"))
    norm = [t for t in json.loads(out)["tables"] if t["name"] == "wigner_summary"][0]
    col = norm["columns"].index("normalization")
    expect(abs(norm["rows"][0][col] - 1.0) <= 1e-8, "gaussian.json normalization")


def main():
    qgame, docs, which = sys.argv[1], sys.argv[2], sys.argv[3]
    with tempfile.TemporaryDirectory() as tmp:
        {"exit_codes": exit_codes, "determinism": determinism, "schema": schema}[which](qgame, docs, tmp)
    print("ok", which)


if __name__ == "__main__":
    main()
