#!/usr/bin/env python3
# Copyright 2026 The kgmine Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the bundled mini corpus under data/mini.

Output is fully determined by the fixed RNG seed, so rerunning the script
reproduces the checked-in files byte for byte.
"""

import argparse
import json
import os
import random

CAPABLE = [("dog", "bark"), ("cat", "meow"), ("bird", "fly"), ("fish", "swim"),
           ("baby", "cry"), ("human", "have"), ("chef", "cook"), ("student", "study"),
           ("horse", "run"), ("bee", "sting"), ("cow", "eat"), ("teacher", "teach"),
           ("writer", "write"), ("farmer", "plant"), ("singer", "sing"), ("wolf", "howl")]
OBJECTS = {"have": "something", "cook": "meal", "eat": "grass", "write": "book",
           "plant": "seed", "sing": "song", "teach": "class", "study": "math"}
USED_FOR = [("knife", "cut"), ("pen", "write"), ("car", "drive"), ("bed", "sleep"),
            ("cup", "drink"), ("key", "open"), ("broom", "sweep"), ("oven", "bake"),
            ("phone", "call"), ("soap", "wash"), ("boat", "sail"), ("shovel", "dig")]
PROPERTY = [("ice cream", "cold"), ("fire", "hot"), ("sky", "blue"), ("sugar", "sweet"),
            ("lemon", "sour"), ("rock", "hard"), ("feather", "light"), ("snow", "white"),
            ("grass", "green"), ("night", "dark"), ("pillow", "soft"), ("desert", "dry")]


class Builder:
  def __init__(self, rng):
    self.rng = rng
    self.records = []

  def add(self, words, edges, kind="eventuality"):
    gid = "g%03d" % len(self.records)
    self.records.append({
        "id": gid,
        "type": kind,
        "freq": self.rng.randint(1, 20),
        "nodes": [{"i": i, "w": w} for i, w in enumerate(words)],
        "edges": [{"src": s, "dst": d, "label": l} for s, d, l in edges],
    })
    return gid


def noun_phrase(phrase, start):
  """Words and compound edges for a possibly multi-word noun; root is last."""
  words = phrase.split()
  root = start + len(words) - 1
  edges = [(root, start + i, "compound") for i in range(len(words) - 1)]
  return words, edges, root


def capable_graph(b, subj, verb, with_object):
  words = [subj, verb]
  edges = [(1, 0, "nsubj")]
  if with_object and verb in OBJECTS:
    words.append(OBJECTS[verb])
    edges.append((1, 2, "dobj"))
  return b.add(words, edges)


def used_for_graph(b, tool, purpose, long_form):
  if long_form:
    # "knife be use for cut"
    return b.add([tool, "be", "use", "for", purpose],
                 [(2, 0, "nsubjpass"), (2, 1, "auxpass"), (2, 3, "prep"), (3, 4, "pobj")])
  return b.add([tool, "for", purpose], [(0, 1, "prep"), (1, 2, "pobj")])


def property_graph(b, thing, prop, copula):
  words, edges, root = noun_phrase(thing, 0)
  if copula:
    # "ice cream be cold"
    n = len(words)
    return b.add(words + ["be", prop], edges + [(n + 1, root, "nsubj"), (n + 1, n, "cop")])
  # "cold ice cream"
  words, edges, root = noun_phrase(thing, 1)
  return b.add([prop] + words, edges + [(root, 0, "amod")])


def main():
  parser = argparse.ArgumentParser(description=__doc__)
  parser.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "mini"))
  parser.add_argument("--seed", type=int, default=7)
  args = parser.parse_args()
  rng = random.Random(args.seed)
  b = Builder(rng)
  support = {}  # (head, relation, tail) -> graph ids

  def note(head, rel, tail, gid):
    support.setdefault((head, rel, tail), []).append(gid)

  for subj, verb in CAPABLE:
    for with_object in (False, True):
      note(subj, "CapableOf", verb, capable_graph(b, subj, verb, with_object))
  for tool, purpose in USED_FOR:
    for long_form in (False, True):
      note(tool, "UsedFor", purpose, used_for_graph(b, tool, purpose, long_form))
  for thing, prop in PROPERTY:
    for copula in (True, False):
      note(thing, "HasProperty", prop, property_graph(b, thing, prop, copula))

  # Ambiguous: the subject word occurs twice.
  for subj, verb in CAPABLE[:4]:
    b.add([subj, verb, "at", subj], [(1, 0, "nsubj"), (1, 2, "prep"), (2, 3, "pobj")])
  # Discourse graphs joining two eventualities.
  pairs = rng.sample(CAPABLE, 8)
  for (s1, v1), (s2, v2) in zip(pairs[::2], pairs[1::2]):
    for link in ("because", "then"):
      gid = b.add([s1, v1, link, s2, v2],
                  [(1, 0, "nsubj"), (4, 3, "nsubj"), (1, 4, link), (4, 2, "mark")], "discourse")
      note(s1, "CapableOf", v1, gid)
      note(s2, "CapableOf", v2, gid)
  while len(b.records) < 100:
    subj, verb = rng.choice(CAPABLE)
    note(subj, "CapableOf", verb, capable_graph(b, subj, verb, True))
  assert len(b.records) == 100, len(b.records)

  seed = ([(s, "CapableOf", v) for s, v in CAPABLE[:10]] +
          [(t, "UsedFor", p) for t, p in USED_FOR[:10]] +
          [(t, "HasProperty", p) for t, p in PROPERTY[:10]])

  # Positives are the true pairs; negatives swap in a word from the same
  # graph that plays a different role.
  annotations = []
  for (head, rel, tail), gids in sorted(support.items()):
    annotations.append((head, rel, tail, 1, sorted(set(gids))))
  for rec in b.records:
    words = [n["w"] for n in rec["nodes"]]
    if rec["type"] != "eventuality" or len(words) < 3:
      continue
    if words[1] in OBJECTS and words[2] == OBJECTS[words[1]]:
      annotations.append((words[2], "CapableOf", words[1], 0, [rec["id"]]))
    elif "for" in words:
      annotations.append((words[-1], "UsedFor", words[0], 0, [rec["id"]]))
    elif "be" in words and words[-1] not in ("be",):
      annotations.append((words[-1], "HasProperty", words[-2], 0, [rec["id"]]))

  os.makedirs(args.out, exist_ok=True)
  with open(os.path.join(args.out, "corpus.jsonl"), "w") as f:
    for rec in b.records:
      f.write(json.dumps(rec, separators=(",", ":")) + "\n")
  with open(os.path.join(args.out, "seed_kb.tsv"), "w") as f:
    for head, rel, tail in seed:
      f.write("%s\t%s\t%s\n" % (head, rel, tail))
  with open(os.path.join(args.out, "annotations.tsv"), "w") as f:
    for head, rel, tail, label, gids in annotations:
      f.write("%s\t%s\t%s\t%d\t%s\n" % (head, rel, tail, label, ",".join(gids)))
  with open(os.path.join(args.out, "config.txt"), "w") as f:
    f.write("# Settings for the bundled mini corpus; paths are relative to this file's directory.\n"
            "corpus=corpus.jsonl\nseed-kb=seed_kb.tsv\nthreshold=0.05\ntop-percent=10\n"
            "dim=8\nepochs=30\nlr=0.1\nseed=1\nworkers=1\n")


if __name__ == "__main__":
  main()
