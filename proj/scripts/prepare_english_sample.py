#!/usr/bin/env python3
"""Builds data/en/raw.txt and data/en/tagged.conllu from public-domain texts.

Sources (all Project Gutenberg / pre-1927, public domain in the US):
  * Natsume Soseki, "Botchan" (tr. Yasotaro Morri, 1918)
      - shipped as test/botchan.txt in the sentencepiece source distribution
  * Lewis Carroll, "Alice's Adventures in Wonderland" (1865)
      - shipped as examples/alice.txt in the wordcloud source distribution
  * "Shakespeare, William", Encyclopaedia Britannica 11th edition (1911)
      - shipped as shksprdata/ancillary/britannica-11th.txt in the
        shakespeare source distribution
  * The Constitution of the United States (US government work)
      - shipped as examples/constitution.txt in the wordcloud source
        distribution

Tagging uses the Brill-lexicon tagger bundled with textblob (PatternTagger),
whose Penn Treebank tags are mapped onto the 17 Universal POS tags.

Usage: prepare_english_sample.py BOTCHAN ALICE BRITANNICA CONSTITUTION OUTDIR
"""

import re
import sys
from pathlib import Path

PENN_TO_UPOS = {
    "CC": "CCONJ", "CD": "NUM", "DT": "DET", "EX": "PRON", "FW": "X",
    "IN": "ADP", "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ", "LS": "X",
    "MD": "AUX", "NN": "NOUN", "NNS": "NOUN", "NNP": "PROPN",
    "NNPS": "PROPN", "PDT": "DET", "POS": "PART", "PRP": "PRON",
    "PRP$": "PRON", "RB": "ADV", "RBR": "ADV", "RBS": "ADV", "RP": "ADP",
    "SYM": "SYM", "TO": "PART", "UH": "INTJ", "VB": "VERB", "VBD": "VERB",
    "VBG": "VERB", "VBN": "VERB", "VBP": "VERB", "VBZ": "VERB",
    "WDT": "DET", "WP": "PRON", "WP$": "PRON", "WRB": "ADV",
    ".": "PUNCT", ",": "PUNCT", ":": "PUNCT", "(": "PUNCT", ")": "PUNCT",
    '"': "PUNCT", "``": "PUNCT", "''": "PUNCT", "#": "SYM", "$": "SYM",
}
SUBORDINATORS = {"because", "if", "although", "though", "while", "whether",
                 "since", "unless", "until", "whereas", "that"}
AUXILIARIES = {"be", "am", "is", "are", "was", "were", "been", "being",
               "have", "has", "had", "do", "does", "did"}


def gutenberg_body(text):
    start = text.find("*** START")
    if start >= 0:
        start = text.find("\n", start)
    else:
        start = 0
    end = text.find("*** END")
    if end < 0:
        end = text.find("End of Project Gutenberg")
    return text[start:end if end > 0 else len(text)]


def britannica_body(text):
    text = re.sub(r"^#.*$", "", text, flags=re.M)
    text = re.sub(r"^p\.\d+:\d+\s*$", "", text, flags=re.M)
    # Drop the bibliography, which is mostly OCR noise.
    cut = text.find("Bibliography")
    return text[:cut] if cut > 0 else text


SPLIT = re.compile(r"(?<=[.!?])[\"')\]]*\s+(?=[\"'(\[]?[A-Z])")


def sentences(body):
    for para in re.split(r"\n\s*\n", body):
        para = re.sub(r"\s+", " ", para.replace("_", "")).strip()
        if not para or para.isupper():
            continue
        for s in SPLIT.split(para):
            s = s.strip()
            if s:
                yield s


def upos(word, penn):
    lw = word.lower()
    if penn == "IN" and lw in SUBORDINATORS:
        return "SCONJ"
    if penn.startswith("VB") and lw in AUXILIARIES:
        return "AUX"
    if penn in PENN_TO_UPOS:
        return PENN_TO_UPOS[penn]
    if re.fullmatch(r"\W+", word):
        return "PUNCT"
    return "X"


def main(argv):
    from textblob.en.taggers import PatternTagger

    botchan, alice, britannica, constitution, outdir = argv[1:6]
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)

    texts = [
        gutenberg_body(Path(botchan).read_text(encoding="utf-8-sig")),
        gutenberg_body(Path(alice).read_text(encoding="utf-8-sig")),
        britannica_body(Path(britannica).read_text(encoding="utf-8", errors="replace")),
        Path(constitution).read_text(encoding="utf-8"),
    ]
    lines = []
    for body in texts:
        lines.extend(sentences(body))
    lines = [s for s in lines if "�" not in s]

    (out / "raw.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    tagger = PatternTagger()
    with open(out / "tagged.conllu", "w", encoding="utf-8") as f:
        f.write("# generated by scripts/prepare_english_sample.py\n")
        for sid, s in enumerate(lines, 1):
            tagged = tagger.tag(s, tokenize=True)
            if not tagged:
                continue
            f.write(f"# sent_id = {sid}\n")
            for i, (w, t) in enumerate(tagged, 1):
                w = w.replace("\t", " ")
                f.write(f"{i}\t{w}\t_\t{upos(w, t)}\t{t}\t_\t_\t_\t_\t_\n")
            f.write("\n")


if __name__ == "__main__":
    main(sys.argv)
