#!/usr/bin/env python3
"""Generate data/animal_lexicon.txt from a WordNet database directory.

The lexicon is the set of lemmas reachable from the first noun sense of
"animal" through hyponym and instance-hyponym pointers (full transitive
closure), lowercased, with multi-word lemmas kept as single
underscore-joined tokens.  The distinct names of the Zoo dataset are
appended so that no Zoo animal is filtered out as a non-animal.

Usage:
    gen_lexicon.py WORDNET_DICT_DIR ZOO_DATA OUT

WORDNET_DICT_DIR must contain index.noun and data.noun in the standard
WordNet database format (WordNet 3.1 was used for the shipped file; the
npm package `wordnet-db` bundles one).
"""

import os
import re
import sys
from collections import deque

ROOT_LEMMA = "animal"
ROOT_SENSE = 1
POINTERS = {"~", "~i"}


def first_sense_offset(index_path, lemma, sense):
    with open(index_path, encoding="utf-8") as f:
        for line in f:
            if line.startswith(" "):
                continue
            fields = line.split()
            if fields[0] != lemma:
                continue
            p_cnt = int(fields[3])
            offsets = fields[6 + p_cnt:]
            return offsets[sense - 1]
    raise SystemExit(f"lemma {lemma!r} not found in {index_path}")


def parse_synset(line):
    fields = line.split()
    w_cnt = int(fields[3], 16)
    lemmas = []
    pos = 4
    for _ in range(w_cnt):
        lemmas.append(fields[pos])
        pos += 2
    p_cnt = int(fields[pos])
    pos += 1
    pointers = []
    for _ in range(p_cnt):
        symbol, offset, ptr_pos = fields[pos], fields[pos + 1], fields[pos + 2]
        pointers.append((symbol, offset, ptr_pos))
        pos += 4
    return lemmas, pointers


def load_nouns(data_path):
    synsets = {}
    with open(data_path, encoding="utf-8") as f:
        for line in f:
            if line.startswith(" "):
                continue
            synsets[line[:8]] = line
    return synsets


def normalize(lemma):
    lemma = re.sub(r"\([a-z]+\)$", "", lemma)
    return lemma.lower().strip()


def main(argv):
    if len(argv) != 4:
        print(__doc__, file=sys.stderr)
        return 2
    wn_dir, zoo_path, out_path = argv[1:]
    root = first_sense_offset(os.path.join(wn_dir, "index.noun"), ROOT_LEMMA, ROOT_SENSE)
    synsets = load_nouns(os.path.join(wn_dir, "data.noun"))

    seen = {root}
    queue = deque([root])
    lemmas = set()
    while queue:
        offset = queue.popleft()
        words, pointers = parse_synset(synsets[offset])
        lemmas.update(normalize(w) for w in words)
        for symbol, target, pos in pointers:
            if symbol in POINTERS and pos == "n" and target not in seen:
                seen.add(target)
                queue.append(target)

    zoo_names = set()
    with open(zoo_path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                zoo_names.add(line.split(",")[0].strip().lower())

    lemmas.discard("")
    with open(out_path, "w", encoding="utf-8") as out:
        out.write(f"# animal lexicon: WordNet noun '{ROOT_LEMMA}' sense {ROOT_SENSE}, "
                  f"hyponym + instance-hyponym closure ({len(seen)} synsets, "
                  f"{len(lemmas)} lemmas)\n")
        out.write(f"# plus {len(zoo_names - lemmas)} Zoo names absent from the closure\n")
        out.write("# generated by tools/gen_lexicon.py\n")
        for lemma in sorted(lemmas | zoo_names):
            out.write(lemma + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
