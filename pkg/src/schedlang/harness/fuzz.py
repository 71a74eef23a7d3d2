"""Random and mutated appointment messages for robustness runs."""

from __future__ import annotations

import random
from typing import Iterator, Sequence

VOCABULARY = (
    "am um bis zwischen und von ab Uhr Montag Dienstag Mittwoch Donnerstag Freitag Samstag Sonntag "
    "nächste Woche morgen heute übermorgen Termin Treffen treffen Vorschlag abgelehnt passt paßt leider "
    "nicht kommen stattdessen können wir uns gern sage zu absagen Stunde Minuten wäre es dann "
    "Januar Februar März November Dezember 1. 2. 11. 5. 31. 1996 96 10 13 18 10:30 9.45 ? ! . ,"
).split()
NOISE = "0123456789.:,;-/?! \n\tabcxyzäöüßÄÖÜ€@#%&()[]<>\"'"


def _mutate(rnd: random.Random, text: str, donors: Sequence[str]) -> str:
    chars = list(text)
    for _ in range(rnd.randint(1, 10)):
        i = rnd.randint(0, len(chars))
        op = rnd.random()
        if op < 0.3 and chars:
            del chars[min(i, len(chars) - 1)]
        elif op < 0.6:
            chars.insert(i, rnd.choice(NOISE))
        elif op < 0.8:
            donor = rnd.choice(donors)
            a = rnd.randint(0, len(donor))
            chars[i:i] = donor[a:a + rnd.randint(1, 25)]
        elif chars:
            j = rnd.randint(i, len(chars))
            chars[i:j] = chars[i:j][::-1]
    return "".join(chars)


def _soup(rnd: random.Random) -> str:
    return " ".join(rnd.choice(VOCABULARY) for _ in range(rnd.randint(0, 25)))


def _garbage(rnd: random.Random) -> str:
    raw = bytes(rnd.randrange(256) for _ in range(rnd.randint(0, 200)))
    return raw.decode("utf-8", errors="replace")


def _wide(rnd: random.Random) -> str:
    return "".join(chr(rnd.randrange(1, 0x2FFF)) for _ in range(rnd.randint(0, 80)))


def fuzz_messages(n: int, seeds: Sequence[str], seed: int = 0) -> Iterator[tuple[str, str]]:
    """Yield ``(name, text)`` pairs: half mutations of *seeds*, half synthetic."""
    rnd = random.Random(seed)
    makers = (_soup, _garbage, _wide)
    for i in range(n):
        if seeds and rnd.random() < 0.5:
            text = _mutate(rnd, rnd.choice(seeds), seeds)
        else:
            text = rnd.choice(makers)(rnd)
        yield f"fuzz{i:05d}", text
