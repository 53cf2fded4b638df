#!/usr/bin/env python3
"""Brute-force oracle for the bundled fixture.

Recomputes, in plain Python and without touching the C++ sources, what the
pipeline should report for the fixture corpus under the three bundled
conditions (t0:pair, ta:pair, ta:pair-patched), and freezes the results
into data/fixture_expected.json. The acceptance suite compares the C++
pipeline against this file.

Rules implemented here (independently of the library):
  cleaning    remove URL spans (http://, https://, www. at a word boundary,
              up to whitespace), @-mentions, and every '#'; repeat until
              stable; collapse whitespace.
  tokenizing  maximal runs of ASCII alphanumerics and non-ASCII bytes with
              internal apostrophes, ASCII-lowercased.
  scrubbing   delete whole-word occurrences of title tokens that are at
              least 3 bytes long and not stopwords/negations.
  scoring     pos = max positive strength (floor 1), neg = min negative
              strength (ceiling -1); the stronger magnitude wins, ties are
              neutral.
  metrics     percentage agreement, Cohen's kappa from marginal products,
              Landis-Koch bands, per-class recall, predicted shares.
"""

import json
import os

HERE = os.path.dirname(__file__)
DATA = os.path.join(HERE, "..", "data")

STOPWORDS = {
    "a", "an", "and", "are", "as", "at", "be", "been", "but", "by", "can",
    "could", "do", "for", "from", "had", "has", "have", "if", "in", "into",
    "is", "it", "its", "may", "of", "on", "or", "our", "so", "than", "that",
    "the", "their", "there", "these", "they", "this", "to", "was", "we",
    "were", "what", "when", "which", "will", "with", "would", "you", "your",
}
NEGATIONS = {"cannot", "never", "no", "none", "not"}
LABELS = ["negative", "neutral", "positive"]


def is_word_char(ch):
    return ch.isascii() and ch.isalnum() or not ch.isascii()


def ascii_lower(text):
    return "".join(chr(ord(c) + 32) if "A" <= c <= "Z" else c for c in text)


def tokenize(text):
    tokens, current = [], ""
    for i, ch in enumerate(text):
        if is_word_char(ch):
            current += ascii_lower(ch)
        elif ch == "'" and current and i + 1 < len(text) and is_word_char(text[i + 1]):
            current += ch
        elif current:
            tokens.append(current)
            current = ""
    if current:
        tokens.append(current)
    return tokens


def strip_once(text):
    out, i, lower = "", 0, ascii_lower(text)
    while i < len(text):
        at_boundary = i == 0 or not is_word_char(text[i - 1])
        matched_url = None
        if at_boundary:
            for prefix in ("http://", "https://", "www."):
                if lower.startswith(prefix, i):
                    matched_url = prefix
                    break
        if matched_url:
            while i < len(text) and not text[i].isspace():
                i += 1
            continue
        if text[i] == "@" and i + 1 < len(text) and (
            text[i + 1].isascii() and (text[i + 1].isalnum() or text[i + 1] == "_")
        ):
            i += 1
            while i < len(text) and text[i].isascii() and (text[i].isalnum() or text[i] == "_"):
                i += 1
            continue
        if text[i] == "#":
            i += 1
            continue
        out += text[i]
        i += 1
    return out


def clean(text):
    while True:
        stripped = strip_once(text)
        if stripped == text:
            break
        text = stripped
    return " ".join(text.split())


def word_runs(text):
    runs, i = [], 0
    while i < len(text):
        if not is_word_char(text[i]):
            i += 1
            continue
        start = i
        folded = ""
        while i < len(text):
            if is_word_char(text[i]):
                folded += ascii_lower(text[i])
                i += 1
            elif text[i] == "'" and i + 1 < len(text) and is_word_char(text[i + 1]):
                folded += "'"
                i += 1
            else:
                break
        runs.append((start, i, folded))
    return runs


def scrub(text, title, min_len=3):
    removable = {
        tok for tok in tokenize(title)
        if len(tok.encode("utf-8")) >= min_len and tok not in STOPWORDS and tok not in NEGATIONS
    }
    kept, cursor, removed = "", 0, 0
    for start, end, folded in word_runs(text):
        if folded in removable:
            kept += text[cursor:start]
            cursor = end
            removed += 1
    kept += text[cursor:]
    return " ".join(kept.split()) if removed else text


def score(text, lexicon):
    pos, neg = 1, -1
    for token in tokenize(text):
        strength = lexicon.get(token)
        if strength is None:
            continue
        if strength > 0:
            pos = max(pos, strength)
        else:
            neg = min(neg, strength)
    if pos > -neg:
        return "positive"
    if -neg > pos:
        return "negative"
    return "neutral"


def kappa_band(kappa):
    if kappa <= 0.0:
        return "poor"
    if kappa <= 0.20:
        return "slight"
    if kappa <= 0.40:
        return "fair"
    if kappa <= 0.60:
        return "moderate"
    if kappa <= 0.80:
        return "substantial"
    return "almost perfect"


def evaluate(gold, predicted):
    n = len(gold)
    cells = {(g, p): 0 for g in LABELS for p in LABELS}
    for g, p in zip(gold, predicted):
        cells[(g, p)] += 1
    trace = sum(cells[(c, c)] for c in LABELS)
    row = {c: sum(cells[(c, p)] for p in LABELS) for c in LABELS}
    col = {c: sum(cells[(g, c)] for g in LABELS) for c in LABELS}
    p_o = trace / n
    p_e = sum(row[c] * col[c] for c in LABELS) / (n * n)
    kappa = (p_o - p_e) / (1.0 - p_e)
    return {
        "n": n,
        "percent_agreement": 100.0 * trace / n,
        "kappa": kappa,
        "band": kappa_band(kappa),
        "shares_predicted": {c: 100.0 * col[c] / n for c in LABELS},
        "per_class_recall": {
            c: (100.0 * cells[(c, c)] / row[c] if row[c] else None) for c in LABELS
        },
    }


def load_lexicon(path):
    lexicon = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            term, strength = line.split("\t")
            lexicon[term] = int(strength)
    return lexicon


def load_patch(path):
    with open(path, encoding="utf-8") as fh:
        return [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]


def main():
    with open(os.path.join(DATA, "fixture_corpus.jsonl"), encoding="utf-8") as fh:
        corpus = [json.loads(line) for line in fh if line.strip()]
    lexicon = load_lexicon(os.path.join(DATA, "fixture_lexicon.tsv"))
    patch = load_patch(os.path.join(DATA, "fixture_patch.txt"))
    patched = {term: s for term, s in lexicon.items() if term not in patch}
    assert len(patched) == len(lexicon) - len(patch)

    gold = [row["gold"] for row in corpus]
    t0 = [clean(row["text"]) for row in corpus]
    ta = [scrub(text, row.get("title", "")) if "title" in row else text
          for text, row in zip(t0, corpus)]

    expected = {
        "n": len(corpus),
        "conditions": {
            "t0:pair": evaluate(gold, [score(text, lexicon) for text in t0]),
            "ta:pair": evaluate(gold, [score(text, lexicon) for text in ta]),
            "ta:pair-patched": evaluate(gold, [score(text, patched) for text in ta]),
        },
    }

    out_path = os.path.join(DATA, "fixture_expected.json")
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(expected, fh, indent=2, sort_keys=True)
        fh.write("\n")

    for name, report in expected["conditions"].items():
        print(f"{name:16s} agreement={report['percent_agreement']:.1f} "
              f"kappa={report['kappa']:.2f} ({report['band']}) "
              f"neg_recall={report['per_class_recall']['negative']}")


if __name__ == "__main__":
    main()
