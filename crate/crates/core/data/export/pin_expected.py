"""Recomputes the `expected` block of every corpus file with GAP.

Usage: python3 pin_expected.py /path/to/gap
"""
import json
import pathlib
import re
import subprocess
import sys

here = pathlib.Path(__file__).resolve().parent
corpus = here.parent / "corpus"
files = sorted(corpus.glob("*.json"))
docs = {f: json.loads(f.read_text()) for f in files}

def gap_group(doc):
    if not doc["generators"]:
        return "Group(())"
    perms = ["PermList(%s)" % [x + 1 for x in g] for g in doc["generators"]]
    return "Group(%s)" % ", ".join(perms)

src = "CORPUS := [%s];;\n" % ",\n".join(
    '["%s", %s]' % (d["name"], gap_group(d)) for d in docs.values())
src += (here / "expected.g").read_text() + "\nQUIT;\n"
out = subprocess.run([sys.argv[1], "-q"], input=src, capture_output=True,
                     text=True, check=True).stdout

pinned = {}
# GAP wraps long output lines; undo that before reading the records back.
flat = out.replace("\\\n", "").replace("\n", "").replace(" ", "")
for record in re.findall(r"\{[^{}]*\}", flat):
    row = json.loads(record)
    pinned[row.pop("name")] = row

for f, doc in docs.items():
    doc["expected"] = pinned[doc["name"]]
    gens = ",".join("\n    " + json.dumps(g, separators=(",", ":"))
                    for g in doc["generators"])
    exp_json = "{\n%s\n  }" % ",\n".join(
        "    %s: %s" % (json.dumps(key), json.dumps(val, separators=(",", ":")))
        for key, val in doc["expected"].items())
    f.write_text('{\n  "name": "%s",\n  "degree": %d,\n  "generators": [%s%s],\n  "expected": %s\n}\n'
                 % (doc["name"], doc["degree"], gens, "\n  " if gens else "", exp_json))
    print(f.name, doc["expected"])
