"""Deterministic synthetic corpus in the WebNLG mold.

Builds a small world of airports, places, dishes, teams and universities,
derives a fact list per subject, and writes train/test splits whose reference
texts are template lexicalizations of each sample's triples (with paraphrase
variants, so several texts can carry the same symbols).  Everything is driven
by one seed; the same seed always yields the same corpora.
"""

from __future__ import annotations

import random

from .corpus import Corpus, SourceSample
from .kg_store import Triple

_CITIES = (
    "Aarhus", "Abilene", "Amarillo", "Ardmore", "Bedford", "Calverton",
    "Denton", "Dorval", "Elko", "Fairfield", "Greenville", "Harlingen",
    "Kenora", "Lahug", "Madrid", "Nashua", "Oradea", "Pocatello", "Quincy",
    "Redding", "Salem", "Tirstrup", "Uvalde", "Waco",
)
_COUNTRIES = (
    "Denmark", "Romania", "Philippines", "United States", "Canada", "Spain",
    "Ireland", "Norway", "Iceland", "Portugal", "Mexico", "Greece", "Austria",
    "Belgium",
)
_PEOPLE = (
    "Jacob Bundsgaard", "Alma Reyes", "Bogdan Iancu", "Carmen Delgado",
    "Dana Whitfield", "Emil Sorensen", "Frida Nilsen", "Gavin Doyle",
    "Helena Marsh", "Ion Petrescu", "Karl Jensen", "Lucia Morales",
    "Marta Kovacs", "Nestor Alvarez", "Olive Branson", "Pedro Santiago",
    "Rasmus Holm", "Sofia Lindqvist", "Tomas Berger", "Ursula Kent",
    "Victor Hale", "Wanda Squires",
)
_OPERATORS = (
    "Aero Partners", "Civil Aviation Group", "Gateway Holdings",
    "Municipal Airfield Trust", "Nordic Air Services", "Prairie Aviation",
    "Skyline Operations", "Tarmac Authority",
)
_DISHES = (
    "Batchoy", "Bionico", "Asam pedas", "Bacon Explosion", "Arros negre",
    "Bandeja paisa", "Barny cake", "Ayam penyet", "Beef kway teow",
    "Bakewell tart", "Binignit", "Carbonnade", "Dodol", "Escalivada",
    "Farina soup", "Gheimeh", "Halloumi pie", "Iskender plate",
)
_INGREDIENTS = (
    "Chicken", "Pork", "Noodles", "Shrimp", "Garlic", "Coconut milk",
    "Raisins", "Chili pepper", "Banana", "Sago", "Almonds", "Beef",
    "Onions", "Palm sugar",
)
_TEAMS = (
    "Aalborg Lions", "Brasov Wolves", "Cebu Stallions", "Drava United",
    "Elsinore Rovers", "Falcon Athletic", "Granada Knights", "Harbor City FC",
)
_STADIUMS = (
    "Fjord Park", "Liberty Arena", "Mango Field", "North Bank Stadium",
    "Old Quarry Ground", "Pinewood Park", "Riverside Bowl", "Summit Court",
)
_LEAGUES = ("Coastal League", "Highland Division", "Metro Conference", "National Circuit")
_UNIVERSITIES = (
    "Alder Institute", "Borealis University", "Crestline College",
    "Delta Polytechnic", "Eastgate University", "Foothill Academy",
)
_ORGS = ("Maritime Research Council", "Northern Education Board", "Pan Island Society")
_YEARS = ("1891", "1902", "1919", "1936", "1948", "1957", "1963", "1975")
_RUNWAYS = (
    "2702.0", "1533.0", "2499.0", "3200.0", "1810.0", "2286.0", "944.0",
    "1372.0", "2133.0", "3048.0",
)
_ELEVATIONS = ("25.0", "78.0", "103.5", "12.0", "248.0", "391.0", "54.9", "7.6")

_IRREGULAR_AIRPORTS = (
    "Blue Ridge Airport", "Copper Creek Airport", "Driftwood Airport",
    "Eagle Pass Airport", "Foxton Airport", "Grays Harbor Airport",
    "Hollow Pine Airport", "Ironwood Airport",
)

TEMPLATES = {
    "country": (
        "{h} is in {t}.",
        "The country of {h} is {t}.",
        "{h} is located in {t}.",
        "{h} belongs to {t}.",
    ),
    "serves": (
        "{h} serves {t}.",
        "{t} is served by {h}.",
        "The city served by {h} is {t}.",
    ),
    "leader": (
        "The leader of {h} is {t}.",
        "{t} is the leader of {h}.",
        "{h} is led by {t}.",
    ),
    "runway length": (
        "The runway length of {h} is {t}.",
        "{h} has a runway length of {t}.",
        "The runway at {h} measures {t}.",
    ),
    "operator": (
        "The operator of {h} is {t}.",
        "{h} is operated by {t}.",
    ),
    "elevation": (
        "The elevation of {h} is {t}.",
        "{h} lies {t} metres above sea level.",
        "{h} sits at an elevation of {t}.",
    ),
    "capital": (
        "The capital of {h} is {t}.",
        "{t} is the capital of {h}.",
    ),
    "ingredient": (
        "{t} is an ingredient of {h}.",
        "{h} contains {t}.",
        "The dish {h} includes {t}.",
        "{h} is made with {t}.",
    ),
    "region": (
        "{h} comes from {t}.",
        "The region of {h} is {t}.",
        "{h} is a dish found in {t}.",
    ),
    "ground": (
        "The ground of {h} is {t}.",
        "{h} play their home games at {t}.",
        "The home ground of {h} is {t}.",
    ),
    "league": (
        "{h} compete in the {t}.",
        "The league of {h} is {t}.",
    ),
    "established": (
        "{h} was established in {t}.",
        "The establishment year of {h} is {t}.",
    ),
    "affiliation": (
        "{h} is affiliated with {t}.",
        "The affiliation of {h} is {t}.",
    ),
}


def build_world(seed: int = 11) -> dict[str, list[Triple]]:
    """Facts per subject; the same seed always yields the same world."""
    rng = random.Random(seed * 7919 + 3)
    airports = [f"{c} Airport" for c in _CITIES[:16]] + list(_IRREGULAR_AIRPORTS)
    facts: dict[str, list[Triple]] = {}

    def add(head, relation, tail):
        facts.setdefault(head, []).append(Triple(head, relation, tail))

    for i, airport in enumerate(airports):
        add(airport, "country", rng.choice(_COUNTRIES))
        add(airport, "runway length", rng.choice(_RUNWAYS))
        if i < 16:
            add(airport, "serves", _CITIES[i])
        if rng.random() < 0.7:
            add(airport, "operator", rng.choice(_OPERATORS))
        if rng.random() < 0.6:
            add(airport, "elevation", rng.choice(_ELEVATIONS))
    for city in _CITIES:
        add(city, "country", rng.choice(_COUNTRIES))
        if rng.random() < 0.6:
            add(city, "leader", rng.choice(_PEOPLE))
    for country in _COUNTRIES:
        add(country, "capital", rng.choice(_CITIES))
        add(country, "leader", rng.choice(_PEOPLE))
    for dish in _DISHES:
        for ing in rng.sample(_INGREDIENTS, rng.choice((1, 2, 2, 3))):
            add(dish, "ingredient", ing)
        add(dish, "region", rng.choice(_COUNTRIES))
    for team in _TEAMS:
        add(team, "ground", rng.choice(_STADIUMS))
        add(team, "league", rng.choice(_LEAGUES))
    for uni in _UNIVERSITIES:
        add(uni, "country", rng.choice(_COUNTRIES))
        add(uni, "established", rng.choice(_YEARS))
        add(uni, "affiliation", rng.choice(_ORGS))
    return facts


def _lexicalize(triples, rng) -> str:
    sentences = []
    for t in triples:
        template = rng.choice(TEMPLATES[t.relation])
        sentences.append(template.format(h=t.head, t=t.tail))
    if len(sentences) > 1 and rng.random() < 0.5:
        rng.shuffle(sentences)
    return " ".join(sentences)


def _make_samples(facts, split: str, n_samples: int, rng) -> list[SourceSample]:
    heads = sorted(facts)
    samples = []
    for i in range(n_samples):
        head = heads[(i * 13 + rng.randrange(len(heads))) % len(heads)]
        available = facts[head]
        k = min(rng.choice((1, 2, 2, 3, 3, 4)), len(available))
        triples = tuple(rng.sample(available, k))
        texts: list[str] = []
        for _ in range(rng.choice((1, 2, 2, 3))):
            text = _lexicalize(triples, rng)
            if text not in texts:
                texts.append(text)
        samples.append(
            SourceSample(id=f"{split}-{i:04d}", triples=triples, texts=tuple(texts))
        )
    return samples


_BARE_MENTIONS = (
    ("Batchoy", "region", "Batchoy is a popular dish."),
    ("Dodol", "ingredient", "Dodol is widely enjoyed."),
    ("Carbonnade", "region", "Carbonnade makes a hearty meal."),
)


def generate_corpora(seed: int = 11, train_samples: int = 420, test_samples: int = 260):
    """(train, test) corpora over one shared world.

    The test split ends with a few samples whose texts never mention both
    ends of any triple, so downstream code sees untransmittable messages.
    """
    facts = build_world(seed)
    rng_train = random.Random(seed * 104729 + 1)
    rng_test = random.Random(seed * 104729 + 2)
    train = _make_samples(facts, "train", train_samples, rng_train)
    test = _make_samples(facts, "test", test_samples - len(_BARE_MENTIONS), rng_test)
    for j, (head, relation, text) in enumerate(_BARE_MENTIONS):
        triple = next(t for t in facts[head] if t.relation == relation)
        test.append(
            SourceSample(id=f"test-bare-{j}", triples=(triple,), texts=(text,))
        )
    return Corpus(tuple(train), "train"), Corpus(tuple(test), "test")
