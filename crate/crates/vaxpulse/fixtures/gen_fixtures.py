"""Generate the synthetic CLI fixtures.

tweets_500.csv: 500 raw tweet rows (9 required columns plus 6 pass-through
columns) spread over 2020-12 .. 2021-05.  Mostly GB/US vaccine tweets built
from templates with sentiment words, brand names, URLs, mentions, hashtags
and emoji; a few rows from other countries, without the keyword, with a
repeated id, and two malformed rows (negative counter, bad timestamp).

brands_50.csv: 50 GB/US tweets, each naming one or two brands.

topics_1000.csv: 1000 tweets whose words come from ten planted themes of
twelve terms each (plus "vaccine"), for the coherence sweep.
"""

import csv
import random
from datetime import datetime, timedelta, timezone

FIELDS = ["tweet_id", "created_at", "country_code", "lang", "text",
          "retweet_count", "like_count", "follower_count", "listed_count",
          "user_id", "user_name", "place_full_name", "source", "reply_count", "quote_count"]

BRANDS = ["Pfizer", "BioNTech", "Moderna", "AstraZeneca", "Johnson & Johnson", "Janssen",
          "Sinovac", "Sinopharm", "Novavax", "CureVac", "Sputnik-V", "Valneva", "Sanofi"]

POSITIVE = [
    "Just got my {brand} vaccine, feeling great and so grateful! {emoji}",
    "Huge thanks to the amazing NHS staff, second dose of the vaccine done {emoji}",
    "The {brand} vaccine rollout is going really well here. Good news!",
    "So happy my mum finally got the vaccine today, what a relief",
    "Vaccine appointment booked!! Excited and hopeful #vaccine",
    "Proud of the scientists behind the {brand} vaccine, brilliant work",
]
NEGATIVE = [
    "Sore arm and a terrible headache after the {brand} vaccine {sad}",
    "Still no vaccine appointment available, this is frustrating and awful",
    "Worried about the blood clot reports with the {brand} vaccine",
    "Vaccine supply shortage again? Disappointing and unacceptable",
    "I hate waiting in line for hours for a vaccine @healthdept",
    "Not happy, my vaccine appointment got cancelled. Ugh.",
]
NEUTRAL = [
    "Vaccine centre opens at the town hall on Monday https://t.co/abc{n}",
    "Reading about {brand} vaccine trial data https://example.com/news/{n}",
    "Which vaccine did you get? {brand} or another one",
    "Second vaccine dose scheduled for next month",
    "The vaccine distribution plan for phase two was published",
    "Vaccine update from @GOVUK\nDetails in the thread",
]
OFF_TOPIC = ["Lovely weather in the park today", "Traffic on the M25 is terrible",
             "New coffee place opened downtown"]
EMOJI = ["\U0001F60A", "\U0001F4AA", "\U0001F389", "❤️", ""]
SAD = ["\U0001F622", "\U0001F620", ""]

START = datetime(2020, 12, 1, tzinfo=timezone.utc)
END = datetime(2021, 5, 31, 23, 59, 59, tzinfo=timezone.utc)


def stamp(rng):
    t = START + timedelta(seconds=rng.randint(0, int((END - START).total_seconds())))
    return t.strftime("%Y-%m-%dT%H:%M:%SZ")


def engagement(rng):
    rt = int(rng.expovariate(1 / 5)) if rng.random() < 0.6 else 0
    likes = int(rng.expovariate(1 / 20)) if rng.random() < 0.8 else 0
    followers = int(rng.lognormvariate(6, 2))
    listed = int(followers * rng.uniform(0, 0.02))
    return rt, likes, followers, listed


def row(rng, i, text, country):
    rt, likes, followers, listed = engagement(rng)
    places = {"GB": "London, England", "US": "Austin, TX", "FR": "Paris, France", "CA": "Toronto, ON"}
    return {
        "tweet_id": str(1340000000000000000 + i),
        "created_at": stamp(rng),
        "country_code": country,
        "lang": "en",
        "text": text,
        "retweet_count": rt,
        "like_count": likes,
        "follower_count": followers,
        "listed_count": listed,
        "user_id": str(rng.randint(10**6, 10**9)),
        "user_name": f"user{rng.randint(1, 9999)}",
        "place_full_name": places[country],
        "source": rng.choice(["Twitter for iPhone", "Twitter for Android", "Twitter Web App"]),
        "reply_count": rng.randint(0, 5),
        "quote_count": rng.randint(0, 2),
    }


def tweet_text(rng, n):
    pool = rng.choice([POSITIVE, NEGATIVE, NEUTRAL])
    return rng.choice(pool).format(brand=rng.choice(BRANDS), emoji=rng.choice(EMOJI),
                                   sad=rng.choice(SAD), n=n)


def tweets_500(rng):
    rows = []
    for i in range(492):
        r = rng.random()
        country = "GB" if r < 0.45 else "US" if r < 0.9 else rng.choice(["FR", "CA"])
        text = rng.choice(OFF_TOPIC) if rng.random() < 0.05 else tweet_text(rng, i)
        rows.append(row(rng, i, text, country))
    for j in range(6):
        dup = dict(rows[rng.randrange(len(rows))])
        rows.append(dup)
    bad = row(rng, 900, "Vaccine counter went negative", "GB")
    bad["like_count"] = -3
    rows.append(bad)
    bad = row(rng, 901, "Vaccine with a broken date", "US")
    bad["created_at"] = "2021-13-45 99:00"
    rows.append(bad)
    rng.shuffle(rows)
    return rows


def brands_50(rng):
    rows = []
    for i in range(50):
        names = rng.sample(BRANDS, 2 if rng.random() < 0.3 else 1)
        template = rng.choice(rng.choice([POSITIVE, NEGATIVE, NEUTRAL]))
        text = template.format(brand=" and ".join(names), emoji=rng.choice(EMOJI),
                               sad=rng.choice(SAD), n=i)
        if "{brand}" not in template:
            text = f"{text} ({' vs '.join(names)})"
        rows.append(row(rng, 5000 + i, text, rng.choice(["GB", "US"])))
    return rows


THEMES = [
    ["dose", "appointment", "clinic", "nurse", "booked", "pharmacy", "booster", "queue", "centre", "slot", "jab", "walkin"],
    ["mask", "lockdown", "school", "travel", "border", "rule", "restriction", "pub", "holiday", "curfew", "quarantine", "passport"],
    ["arm", "sore", "fever", "headache", "tired", "chill", "symptom", "rest", "paracetamol", "nausea", "ache", "sleep"],
    ["shortage", "distribution", "supply", "delivery", "stock", "shipment", "logistic", "warehouse", "freezer", "export", "order", "contract"],
    ["trial", "efficacy", "data", "study", "phase", "result", "placebo", "participant", "variant", "antibody", "approval", "regulator"],
    ["clot", "risk", "safety", "pause", "blood", "rare", "investigation", "suspend", "concern", "review", "report", "death"],
    ["grandma", "mum", "dad", "family", "hug", "visit", "care", "home", "elderly", "reunion", "grandchild", "relief"],
    ["government", "minister", "policy", "plan", "target", "million", "rollout", "priority", "group", "announcement", "budget", "strategy"],
    ["conspiracy", "microchip", "hoax", "misinformation", "myth", "fake", "claim", "rumour", "debunk", "lie", "theory", "tracker"],
    ["worker", "teacher", "frontline", "staff", "hospital", "doctor", "volunteer", "hero", "shift", "ward", "paramedic", "carer"],
]


def topics_1000(rng):
    rows = []
    for i in range(1000):
        main = rng.randrange(len(THEMES))
        other = rng.randrange(len(THEMES))
        n = rng.randint(8, 16)
        words = [rng.choice(THEMES[main] if rng.random() < 0.85 else THEMES[other]) for _ in range(n)]
        words.insert(rng.randrange(len(words) + 1), "vaccine")
        rows.append(row(rng, 10000 + i, " ".join(words), rng.choice(["GB", "US"])))
    return rows


def write(name, rows):
    with open(name, "w", encoding="utf-8", newline="") as f:
        w = csv.DictWriter(f, fieldnames=FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def main():
    rng = random.Random(20210322)
    write("tweets_500.csv", tweets_500(rng))
    write("brands_50.csv", brands_50(rng))
    write("topics_1000.csv", topics_1000(rng))


if __name__ == "__main__":
    main()
