#!/usr/bin/env python3
"""Generates the bundled fixture corpus (data/fixture_corpus.jsonl).

The corpus is synthetic and mechanism-shaped rather than distribution-shaped:
tweets are grouped so that each pipeline stage fixes a known set of errors.

  group a (18)  gold-neutral tweets that echo their linked paper's title;
                the echoed title words carry lexicon sentiment, so the
                pair model mislabels them until the scrub stage removes
                the title terms.
  group b (8)   gold-neutral tweets whose lexicon trigger is NOT a title
                word; scrubbing cannot fix them, removing the trigger
                from the lexicon (the patch) does.
  group c (6)   gold-positive tweets. Four carry robust positive words;
                two are positive/negative magnitude ties at t0 that the
                scrub stage resolves in favour of the positive word.
  group d (6)   gold-negative tweets. Four carry robust negative words
                and survive every stage; two depend on patched terms and
                lose their trigger after the lexicon patch (the recall
                trade-off the experiment is meant to surface).
  group e (20)  gold-neutral filler with no lexicon words: affordances,
                unicode, and three tweets without any DOI/title (they
                pass through the scrub stage and get flagged).
  group f (2)   gold-neutral exact ties (equal positive and negative
                strength in the same tweet).

Sampling note: the corpus is authored by hand, not sampled from any tweet
collection; ids encode the group so expected per-stage behaviour stays
auditable.
"""

import json
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "fixture_corpus.jsonl")


def t(tid, text, gold, doi=None, title=None):
    row = {"id": tid, "text": text, "gold": gold}
    if doi is not None:
        row["doi"] = doi
    if title is not None:
        row["title"] = title
    return row


TWEETS = [
    # --- group a: title-echo errors, fixed by scrubbing -------------------
    t("a01", "New study: Tumor growth in lung cancer explained http://t.co/a1b2 #cancer",
      "neutral", "10.5555/fx-a01", "Tumor growth in lung cancer explained"),
    t("a02", "Interesting data on breast cancer screening rates https://doi.org/10.5555/fx-a02 via @medjournal",
      "neutral", "10.5555/fx-a02", "Breast cancer screening rates in Europe"),
    t("a03", "#cancer genomics atlas updated today www.genomics.org/atlas",
      "neutral", "10.5555/fx-a03", "The cancer genomics atlas"),
    t("a04", "Childhood obesity trends 2000-2012 http://t.co/ob1 #publichealth",
      "neutral", "10.5555/fx-a04", "Childhood obesity trends in the new millennium"),
    t("a05", "Disease burden estimates for chronic illness @whoupdates http://t.co/dd1",
      "neutral", "10.5555/fx-a05", "Global disease burden estimates"),
    t("a06", "Rare disease registry goes live #rarediseases",
      "neutral", "10.5555/fx-a06", "A registry for rare disease research"),
    t("a07", "Heart disease mortality figures http://t.co/hd7 @cardioupdate",
      "neutral", "10.5555/fx-a07", "Trends in heart disease mortality"),
    t("a08", "New paper on pancreatic cancer biomarkers #oncology https://doi.org/10.5555/fx-a08",
      "neutral", "10.5555/fx-a08", "Pancreatic cancer biomarkers in early detection"),
    t("a09", "Skin cancer rates among outdoor workers http://t.co/sk9",
      "neutral", "10.5555/fx-a09", "Skin cancer rates among outdoor workers"),
    t("a10", "Obesity and metabolic syndrome link examined @nutrisci www.nutrisci.org/paper",
      "neutral", "10.5555/fx-a10", "Obesity and the metabolic syndrome"),
    t("a11", "Baby sleep patterns linked to brain development http://t.co/bb1 #parenting",
      "neutral", "10.5555/fx-a11", "Baby sleep patterns and early brain development"),
    t("a12", "Primary care access in rural regions mapped @healthpolicy http://t.co/cc2",
      "neutral", "10.5555/fx-a12", "Primary care access in rural regions"),
    t("a13", "Neonatal care outcomes for preterm baby cohorts #neonatal",
      "neutral", "10.5555/fx-a13", "Neonatal care outcomes in preterm baby cohorts"),
    t("a14", "Colon cancer screening guidelines revised https://doi.org/10.5555/fx-a14",
      "neutral", "10.5555/fx-a14", "Colon cancer screening guidelines"),
    t("a15", "Infectious disease modelling challenges reviewed @epiforecast",
      "neutral", "10.5555/fx-a15", "Challenges in infectious disease modelling"),
    t("a16", "Prostate cancer therapy outcomes data released http://t.co/pc16",
      "neutral", "10.5555/fx-a16", "Prostate cancer therapy outcomes"),
    t("a17", "Obesity prevalence maps by region #maps www.healthmaps.io/ob",
      "neutral", "10.5555/fx-a17", "Obesity prevalence across regions"),
    t("a18", "Tropical disease surveillance network expands @globalhealth http://t.co/td18",
      "neutral", "10.5555/fx-a18", "A surveillance network for tropical disease"),
    # --- group b: off-title triggers, fixed by the lexicon patch ----------
    t("b01", "Notes on cancer metabolism from this week's reading list http://t.co/b1",
      "neutral", "10.5555/fx-b01", "Metabolic pathways in tumour cells"),
    t("b02", "Lab seminar recap: disease dynamics models on Friday @labgroup",
      "neutral", "10.5555/fx-b02", "Nonlinear dynamics in epidemic models"),
    t("b03", "Conference notes mention obesity statistics briefly #conf2012",
      "neutral", "10.5555/fx-b03", "Public health statistics methodology"),
    t("b04", "Reading about cancer prevention while commuting https://t.co/b4x",
      "neutral", "10.5555/fx-b04", "Prevention strategies for chronic conditions"),
    t("b05", "Journal club pick covers disease ecology this month",
      "neutral", "10.5555/fx-b05", "Spatial ecology of host populations"),
    t("b06", "Baby names dataset cross-referenced with census records @datadig",
      "neutral", "10.5555/fx-b06", "Census record linkage methods"),
    t("b07", "Thread on foster care policy data sources http://t.co/b7y",
      "neutral", "10.5555/fx-b07", "Policy data in longitudinal studies"),
    t("b08", "Slides added: disease mapping workshop materials www.workshop.example.org/slides",
      "neutral", "10.5555/fx-b08", "Geospatial mapping workshop proceedings"),
    # --- group c: gold-positive ------------------------------------------
    t("c01", "Excellent methodology in this new preprint http://t.co/c1 #stats",
      "positive", "10.5555/fx-c01", "Bayesian hierarchical models for survey data"),
    t("c02", "Love this paper, sharing with my whole group @authorone",
      "positive", "10.5555/fx-c02", "Community detection in dynamic networks"),
    t("c03", "Amazing results, congrats to the team! https://doi.org/10.5555/fx-c03",
      "positive", "10.5555/fx-c03", "Graphene synthesis at room temperature"),
    t("c04", "What a great read for the weekend #recommended",
      "positive", "10.5555/fx-c04", "Citizen science and data quality"),
    t("c05", "Great news on cancer immunotherapy trials! http://t.co/c5 @oncnews",
      "positive", "10.5555/fx-c05", "Cancer immunotherapy trial outcomes"),
    t("c06", "Brilliant approach to cancer detection, kudos https://t.co/c6z",
      "positive", "10.5555/fx-c06", "Early cancer detection via liquid biopsy"),
    # --- group d: gold-negative ------------------------------------------
    t("d01", "Terrible experimental design in this one http://t.co/d1",
      "negative", "10.5555/fx-d01", "Replication of priming effects"),
    t("d02", "Honestly the worst figure I have seen all year @vizcritic",
      "negative", "10.5555/fx-d02", "Visualizing uncertainty in forecasts"),
    t("d03", "Awful statistics, p-hacking everywhere #badscience",
      "negative", "10.5555/fx-d03", "Reporting practices in clinical trials"),
    t("d04", "I hate how they buried the null result www.stats.example.com/null",
      "negative", "10.5555/fx-d04", "Publication incentives and null findings"),
    t("d05", "Cancer everywhere in my family history, this is grim reading",
      "negative", "10.5555/fx-d05", "Hereditary tumour risk profiles"),
    t("d06", "Disease after disease in this cohort, depressing numbers",
      "negative", "10.5555/fx-d06", "Longitudinal cohort morbidity outcomes"),
    # --- group e: neutral filler -----------------------------------------
    t("e01", "New issue of the journal is out http://t.co/e1 @sciupdates",
      "neutral", "10.5555/fx-e01", "Editorial: volume twelve"),
    t("e02", "Dataset and code now on the lab website www.lab.example.edu/code",
      "neutral", "10.5555/fx-e02", "Open materials for replication"),
    t("e03", "Slides from today's talk #seminar",
      "neutral", "10.5555/fx-e03", "Sparse matrix factorization at scale"),
    t("e04", "Preprint posted, comments welcome https://doi.org/10.5555/fx-e04",
      "neutral", "10.5555/fx-e04", "Topology of citation networks"),
    t("e05", "Our group will present this at the workshop @confbot",
      "neutral", "10.5555/fx-e05", "Workshop abstracts volume"),
    t("e06", "Figure 3 is clearer in the updated version #update",
      "neutral", "10.5555/fx-e06", "Erratum and figure updates"),
    t("e07", "Méthodes détaillées dans l'annexe étendue http://t.co/e7",
      "neutral", "10.5555/fx-e07", "Annexes méthodologiques étendues"),
    t("e08", "🔬 lab notebook thread, part two 🧪",
      "neutral", "10.5555/fx-e08", "Protocols for field sampling"),
    t("e09", "Replication files archived per policy @archivebot",
      "neutral", "10.5555/fx-e09", "Archiving standards for computational work"),
    t("e10", "Volume 12 issue 4 table of contents http://t.co/e10",
      "neutral", "10.5555/fx-e10", "Table of contents"),
    t("e11", "Tomorrow's colloquium moved to room 204 #dept",
      "neutral", "10.5555/fx-e11", "Departmental colloquium schedule"),
    t("e12", "Survey closes Friday, please participate www.survey.example.org/go",
      "neutral", "10.5555/fx-e12", "Participation rates in online surveys"),
    t("e13", "Code review session notes posted @devlog",
      "neutral", "10.5555/fx-e13", "Static analysis for research software"),
    t("e14", "The appendix tables were regenerated overnight",
      "neutral", "10.5555/fx-e14", "Supplementary materials overview"),
    t("e15", "Bookmarking this thread for later reading", "neutral"),
    t("e16", "Conference wifi saved my demo today 😅", "neutral"),
    t("e17", "Coffee first, then the revisions @selfnote", "neutral"),
    t("e18", "Lecture recordings are now captioned #access",
      "neutral", "10.5555/fx-e18", "Captioning accuracy for lectures"),
    t("e19", "New lab members introduced on the site http://t.co/e19",
      "neutral", "10.5555/fx-e19", "Annual laboratory report"),
    t("e20", "Printed proofs arrived for final check 📄",
      "neutral", "10.5555/fx-e20", "Proofreading checklist appendix"),
    # --- group f: exact strength ties ------------------------------------
    t("f01", "Good discussion but sad conclusions overall http://t.co/f1",
      "neutral", "10.5555/fx-f01", "Discussion sections under review"),
    t("f02", "Happy to see rigour, sad about the sample size @methods",
      "neutral", "10.5555/fx-f02", "Sample size planning guides"),
]


def main():
    assert len(TWEETS) == 60, len(TWEETS)
    assert len({row["id"] for row in TWEETS}) == 60
    with open(OUT, "w", encoding="utf-8", newline="\n") as fh:
        for row in TWEETS:
            fh.write(json.dumps(row, sort_keys=True, ensure_ascii=False,
                                separators=(",", ":")))
            fh.write("\n")
    print(f"wrote {len(TWEETS)} tweets to {os.path.normpath(OUT)}")


if __name__ == "__main__":
    main()
