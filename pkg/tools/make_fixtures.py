"""Regenerate the bundled data fixtures (triple TSV + embedding tables).

The outputs are frozen into src/kgrl/data/; rerun only when the schema
changes.  Node vectors get a relatedness nudge toward their at_location
targets (mimicking how Numberbatch folds ConceptNet structure into its
embedding space); word vectors are independent unit vectors.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

DATA = Path(__file__).resolve().parent.parent / "src" / "kgrl" / "data"
DIM = 50
RELATEDNESS = 1.5  # weight of at_location-neighbor pull in node vectors

# (object, target furniture) pairs; targets must be generate.KITCHEN_FURNITURE keys
AT_LOCATION = [
    ("apple", "refrigerator"), ("milk", "refrigerator"), ("cheese", "refrigerator"),
    ("butter", "refrigerator"), ("egg", "refrigerator"), ("tomato", "refrigerator"),
    ("lettuce", "refrigerator"), ("carrot", "refrigerator"), ("pepper", "refrigerator"),
    ("plate", "cabinet"), ("bowl", "cabinet"), ("saucer", "cabinet"),
    ("cup", "cupboard"), ("mug", "cupboard"), ("glass", "cupboard"),
    ("flour", "cupboard"), ("sugar", "cupboard"), ("potato", "cupboard"),
    ("knife", "drawer"), ("fork", "drawer"), ("spoon", "drawer"), ("spatula", "drawer"),
    ("pan", "stove"), ("pot", "stove"), ("kettle", "stove"),
    ("sponge", "sink"), ("dish_soap", "sink"),
    ("towel", "shelf"), ("cookbook", "shelf"), ("jar", "shelf"),
    ("bread", "counter"), ("banana", "counter"), ("onion", "counter"),
    ("toaster", "counter"), ("cutting_board", "counter"),
    ("trash_bag", "trash_can"), ("wrapper", "trash_can"),
]

IS_A = [
    ("apple", "fruit"), ("banana", "fruit"), ("tomato", "fruit"),
    ("carrot", "vegetable"), ("onion", "vegetable"), ("potato", "vegetable"),
    ("lettuce", "vegetable"), ("pepper", "vegetable"),
    ("milk", "dairy"), ("cheese", "dairy"), ("butter", "dairy"), ("egg", "food"),
    ("bread", "food"), ("flour", "food"), ("sugar", "food"),
    ("knife", "utensil"), ("fork", "utensil"), ("spoon", "utensil"),
    ("spatula", "utensil"), ("plate", "dishware"), ("bowl", "dishware"),
    ("saucer", "dishware"), ("cup", "dishware"), ("mug", "dishware"),
    ("glass", "dishware"), ("pan", "cookware"), ("pot", "cookware"),
    ("kettle", "cookware"), ("sponge", "cleaning_tool"), ("towel", "cleaning_tool"),
    ("dish_soap", "cleaning_tool"), ("cookbook", "book"), ("jar", "container_item"),
    ("toaster", "appliance"), ("cutting_board", "kitchenware"),
    ("trash_bag", "waste_item"), ("wrapper", "waste_item"),
    # clutter that does not belong anywhere in a kitchen (distractor pool)
    ("sock", "clothing"), ("toy_car", "toy"), ("pencil", "stationery"),
    ("marble", "toy"), ("coin", "trinket"), ("button", "trinket"),
    ("ribbon", "trinket"), ("seashell", "trinket"),
]

USED_FOR = [
    ("knife", "cutting"), ("fork", "eating"), ("spoon", "eating"),
    ("spatula", "cooking"), ("pan", "frying"), ("pot", "boiling"),
    ("kettle", "boiling"), ("cup", "drinking"), ("mug", "drinking"),
    ("glass", "drinking"), ("plate", "eating"), ("bowl", "eating"),
    ("sponge", "cleaning"), ("towel", "drying"), ("dish_soap", "cleaning"),
    ("cookbook", "cooking"), ("toaster", "toasting"), ("cutting_board", "cutting"),
    ("apple", "eating"), ("bread", "eating"), ("cheese", "eating"),
    ("egg", "baking"), ("flour", "baking"), ("sugar", "baking"),
    ("refrigerator", "storing_food"), ("cabinet", "storage"), ("cupboard", "storage"),
    ("drawer", "storage"), ("shelf", "storage"), ("stove", "cooking"),
    ("sink", "washing"), ("counter", "preparing_food"), ("table", "eating"),
    ("dishwasher", "washing"), ("trash_can", "waste"),
]

RELATED_TO = [
    ("apple", "banana"), ("knife", "fork"), ("fork", "spoon"), ("cup", "mug"),
    ("plate", "bowl"), ("pan", "pot"), ("milk", "cheese"), ("bread", "toaster"),
    ("sponge", "dish_soap"), ("flour", "sugar"), ("carrot", "onion"),
    ("tomato", "lettuce"), ("kettle", "mug"), ("egg", "flour"),
    ("cutting_board", "knife"), ("glass", "milk"), ("jar", "sugar"),
    ("wrapper", "trash_bag"), ("sock", "button"), ("toy_car", "marble"),
    ("pencil", "coin"), ("ribbon", "seashell"),
]

FURNITURE = ["refrigerator", "cabinet", "drawer", "cupboard", "trash_can",
             "dishwasher", "sink", "table", "counter", "shelf", "stove"]


def triples():
    rows = []
    for obj, target in AT_LOCATION:
        rows.append((obj, "at_location", target, 2.0))
    for f in FURNITURE:
        rows.append((f, "at_location", "kitchen", 1.5))
    for a, b in IS_A:
        rows.append((a, "is_a", b, 1.0))
    for a, b in USED_FOR:
        rows.append((a, "used_for", b, 1.0))
    for a, b in RELATED_TO:
        rows.append((a, "related_to", b, 0.8))
    return rows


def write_triples(path: Path):
    rows = triples()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# kitchen commonsense triples: head<TAB>relation<TAB>tail<TAB>weight\n")
        for h, r, t, w in rows:
            fh.write(f"{h}\t{r}\t{t}\t{w:g}\n")
    return rows


TEMPLATE_TOKENS = [
    "you", "are", "in", "the", ".", ",", "see", "a", "an", "on", "there", "is",
    "and", "carries", "nothing", "player", "look", "around", "take", "from",
    "put", "prepare", "meal", "recipe", "says", ":", "gather", "empty", "inside",
]


def _unit(rng, dim=DIM):
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _fmt(token: str, vec: np.ndarray) -> str:
    return token + " " + " ".join(f"{x:.6f}" for x in vec)


def write_embeddings(rows):
    labels = sorted({h for h, _, _, _ in rows} | {t for _, _, t, _ in rows})
    word_tokens = sorted({p for label in labels for p in label.split("_")}
                         | set(TEMPLATE_TOKENS))

    rng_w = np.random.default_rng(1234)
    with open(DATA / "glove_50d.txt", "w", encoding="utf-8") as fh:
        for tok in word_tokens:
            fh.write(_fmt(tok, _unit(rng_w)) + "\n")

    rng_n = np.random.default_rng(5678)
    base = {label: _unit(rng_n) for label in labels}
    targets = {}
    for h, rel, t, _ in rows:
        if rel == "at_location":
            targets.setdefault(h, []).append(t)
    with open(DATA / "numberbatch_50d.txt", "w", encoding="utf-8") as fh:
        fh.write(f"{len(labels)} {DIM}\n")
        for label in labels:
            v = base[label].copy()
            for t in targets.get(label, []):
                v = v + RELATEDNESS * base[t]
            v = v / np.linalg.norm(v)
            fh.write(_fmt(f"/c/en/{label}", v) + "\n")


if __name__ == "__main__":
    DATA.mkdir(parents=True, exist_ok=True)
    rows = write_triples(DATA / "kitchen_triples.tsv")
    write_embeddings(rows)
    heads = {h for h, _, _, _ in rows}
    print(f"wrote {len(rows)} triples, {len(heads)} distinct heads -> {DATA}")
