#!/usr/bin/env python3
# Copyright 2026 The scholarlda Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes data/mini_corpus.jsonl and data/mini_corpus_themes.csv.

300 synthetic abstracts over three venues. Each venue owns two planted
themes; a theme has five seed words (written to the themes file) and a
handful of weaker support words. Documents mix one dominant theme with
a little of the venue's other theme, shared academic filler and
ordinary English function words that the stoplist removes.

Output is fully determined by SEED.
"""

import json
import random
import sys
from pathlib import Path

SEED = 20160126

THEMES = {
    "retrieval": (["query", "retrieval", "ranking", "relevance", "search"],
                  ["engine", "index", "judgments", "click", "precision",
                   "recall", "documents", "expansion"]),
    "recsys": (["recommendation", "collaborative", "filtering", "ratings", "preference"],
               ["items", "matrix", "factorization", "implicit", "feedback",
                "cold", "start", "personalized"]),
    "mining": (["frequent", "itemsets", "pattern", "mining", "association"],
               ["rules", "support", "transactions", "apriori", "closed",
                "sequential", "episodes", "pruning"]),
    "graphs": (["graph", "community", "clustering", "spectral", "nodes"],
               ["edges", "modularity", "partition", "laplacian", "random",
                "walk", "embedding", "vertices"]),
    "social": (["twitter", "social", "influence", "diffusion", "followers"],
               ["tweets", "cascades", "viral", "hashtags", "microblog",
                "users", "spread", "retweet"]),
    "crawling": (["crawler", "hyperlinks", "pagerank", "spam", "pages"],
                 ["anchor", "text", "hosts", "domains", "freshness",
                  "duplicate", "detection", "link"]),
}

VENUES = {
    "SIGIR": ("retrieval", "recsys"),
    "KDD": ("mining", "graphs"),
    "WWW": ("social", "crawling"),
}

FILLER = ["approach", "method", "propose", "results", "experiments",
          "dataset", "novel", "framework", "performance", "evaluate",
          "problem", "model", "algorithm", "demonstrate", "existing"]

FUNCTION = ["the", "of", "and", "we", "in", "a", "to", "is", "that", "for",
            "this", "on", "with", "are", "by", "our", "which", "an", "it"]


def draw_theme_word(rng, theme):
    seeds, support = THEMES[theme]
    if rng.random() < 0.55:
        return rng.choice(seeds)
    return rng.choice(support)


def make_doc(rng, dominant, secondary, length):
    words = []
    for _ in range(length):
        u = rng.random()
        if u < 0.55:
            words.append(draw_theme_word(rng, dominant))
        elif u < 0.62:
            words.append(draw_theme_word(rng, secondary))
        elif u < 0.77:
            words.append(rng.choice(FILLER))
        else:
            words.append(rng.choice(FUNCTION))
    return words


def main(out_dir):
    rng = random.Random(SEED)
    out_dir = Path(out_dir)
    records = []
    authors = {v: [f"{v.lower()}_author_{i}" for i in range(12)] for v in VENUES}
    serial = 0
    for venue, (first, second) in VENUES.items():
        for i in range(100):
            serial += 1
            dominant, secondary = (first, second) if i % 2 == 0 else (second, first)
            title = make_doc(rng, dominant, secondary, rng.randint(6, 10))
            body = make_doc(rng, dominant, secondary, rng.randint(50, 80))
            records.append({
                "id": f"mini-{serial:03d}",
                "title": " ".join(title).capitalize(),
                "abstract": " ".join(body).capitalize() + ".",
                "venue": venue,
                "year": 2012 + i % 6,
                "authors": rng.sample(authors[venue], rng.randint(1, 3)),
            })
    with open(out_dir / "mini_corpus.jsonl", "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, sort_keys=True) + "\n")
    with open(out_dir / "mini_corpus_themes.csv", "w", encoding="utf-8") as f:
        f.write("theme,venue,seed_words\n")
        for venue, names in VENUES.items():
            for name in names:
                f.write(f"{name},{venue},{' '.join(THEMES[name][0])}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data")
