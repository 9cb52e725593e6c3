#!/usr/bin/env python3
"""Regenerate base.dic, the contemporary English wordlist.

Sources:
  * lemminflect's bundled lemma/inflection table (derived from the NLM
    SPECIALIST lexicon): lemma, word class and regular/irregular inflections.
  * wordfreq Zipf frequencies, used only to drop very rare lemmas.
  * src/closed_class.dic and src/modern_extra.dic, hand-maintained.

Surfaces that the 17th-century overlay marks as archaic spellings are
excluded so that the base list stays strictly contemporary, and so are
hyphenated spellings whose closed-up form is also listed.

    pip install lemminflect wordfreq
    python3 gen_base.py > base.dic
"""

import gzip
import os
import sys

import lemminflect
from wordfreq import zipf_frequency

HERE = os.path.dirname(os.path.abspath(__file__))
MIN_ZIPF = 1.5

# Forms that a contemporary dictionary should not supply even if the source
# table happens to list them.
EXCLUDE = {
    "accrew", "aegypt", "benumb", "benumbs", "benumbed", "benumbing", "buz",
    "cyons", "cyon", "meerly", "mormo", "shewn", "shew", "shews", "shewed",
    "shewing", "viz", "inforce", "inforces", "inforced", "inforcing",
    "ingage", "ingages", "ingaged", "ingaging", "incourage", "incourages",
    "incouraged", "incouraging", "encrease", "encreases", "encreased",
    "encreasing", "improveable", "improveing", "inferiour", "incogitancy",
    "dispise", "hath", "doth", "thou", "thee", "thy", "thine", "ye",
}

VERB_SLOTS = ["+PT", "+PP", "+G", "+PR+3+s"]


def overlay_spellings():
    out = set()
    with open(os.path.join(HERE, "xvii.dic"), encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "+spelling" in line:
                out.add(line.split(",", 1)[0].lower())
    return out


def forms(field):
    return [f for f in field.split("/") if f]


def rows():
    path = os.path.join(os.path.dirname(lemminflect.__file__), "resources", "infl_lu.csv.gz")
    with gzip.open(path, "rt", encoding="utf-8") as f:
        for line in f:
            parts = line.rstrip("\n").split(",")
            if len(parts) >= 2:
                yield parts


def entries():
    for parts in rows():
        lemma, cls, infl = parts[0], parts[1], parts[2:]
        if " " in lemma or not lemma:
            continue
        every = [lemma] + [x for field in infl for x in forms(field)]
        if max(zipf_frequency(x, "en") for x in every) < MIN_ZIPF:
            continue
        if cls == "noun":
            yield lemma, lemma, "N+s"
            for pl in forms(infl[0]) if infl else []:
                yield pl, lemma, "N+p"
        elif cls == "verb":
            yield lemma, lemma, "V+INF"
            fields = (infl + [""] * 4)[:4]
            if not fields[1]:
                fields[1] = fields[0]
            for slot, field in zip(VERB_SLOTS, fields):
                for x in forms(field):
                    yield x, lemma, "V" + slot
        elif cls in ("adj", "adv"):
            pos = "A" if cls == "adj" else "ADV"
            yield lemma, lemma, pos
            fields = (infl + [""] * 2)[:2]
            for slot, field in zip(["+COMP", "+SUP"], fields):
                for x in forms(field):
                    yield x, lemma, pos + slot


def hand_entries(name):
    with open(os.path.join(HERE, "src", name), encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith("#"):
                yield line


def fmt(surface, lemma, tags):
    if surface == lemma:
        return f"{surface},{tags}"
    return f"{surface},{lemma},{tags}"


def main():
    banned = EXCLUDE | overlay_spellings()
    lines = set()
    for surface, lemma, tags in entries():
        if surface.lower() in banned or "," in surface or "'" in surface:
            continue
        lines.add(fmt(surface, lemma, tags))
    for name in ("closed_class.dic", "modern_extra.dic"):
        lines.update(hand_entries(name))
    # A hyphenated spelling is dropped when the closed-up form is listed too:
    # the contemporary form is the closed one.
    surfaces = {l.split(",", 1)[0].lower() for l in lines}
    lines = {l for l in lines
             if "-" not in (s := l.split(",", 1)[0].lower()) or s.replace("-", "") not in surfaces}
    out = sys.stdout
    out.write("# Contemporary English base wordlist (generated by gen_base.py; do not edit).\n")
    out.write("# Format: surface[,lemma],POS+features\n")
    for line in sorted(lines, key=lambda l: (l.split(",", 1)[0].lower(), l)):
        out.write(line + "\n")


if __name__ == "__main__":
    main()
