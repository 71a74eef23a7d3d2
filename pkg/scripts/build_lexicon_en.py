"""Regenerate the English full-form lexicon (src/schedlang/extraction/data/lexicon_en.tsv)."""

from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "schedlang" / "extraction" / "data" / "lexicon_en.tsv"

rows = []


def add(surface, lemma, pos, feats="-", frame="-"):
    rows.append((surface, lemma, pos, feats, frame))


def verb(forms, lemma, frame, feats="-"):
    for f in forms:
        add(f, lemma, "verb", feats, frame)


for i, w in enumerate(["monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"], 1):
    add(w, w.capitalize(), "noun", f"weekday={i}")
    add(w[:3], w.capitalize(), "noun", f"weekday={i}")
months = ["january", "february", "march", "april", "may", "june", "july", "august", "september",
          "october", "november", "december"]
for i, w in enumerate(months, 1):
    add(w, w.capitalize(), "noun", f"month={i}")
    if w != "may":
        add(w[:3], w.capitalize(), "noun", f"month={i}")
add("sept", "September", "noun", "month=9")
for w, r in [("today", "today"), ("tomorrow", "tomorrow")]:
    add(w, w, "adv", f"rel={r}")
for w in ["next", "coming", "following"]:
    add(w, "next", "adj", "mod=next")
add("this", "this", "det", "mod=this")
add("week", "week", "noun", "unit=week")
add("weeks", "week", "noun", "unit=week")
for w in ["hour", "hours"]:
    add(w, "hour", "noun", "unit=hour;minutes=60")
for w in ["minute", "minutes", "min", "mins"]:
    add(w, "minute", "noun", "unit=minute;minutes=1")
add("o'clock", "o'clock", "misc", "unit=clock")
add("am", "am", "misc", "ampm=am")
add("pm", "pm", "misc", "ampm=pm")
add("day", "day", "noun", "unit=day")
add("days", "day", "noun", "unit=day")
for w, n in [("one", 1), ("an", 1), ("a", 1), ("two", 2), ("three", 3), ("four", 4), ("half", None)]:
    add(w, w, "det" if w in ("a", "an") else "misc", f"count={n}" if n else "-")
for w in ["on", "at", "between", "from", "to", "until", "till", "for", "in", "during", "around", "about",
          "with", "by", "of", "after", "before", "regarding", "concerning", "instead"]:
    add(w, w, "prep")
for w in ["the", "my", "your", "our", "his", "her", "their", "every", "all", "that", "these", "those", "any"]:
    add(w, w, "det")
for w in ["no", "none"]:
    add(w, "no", "det", "cue=neg")
for w in ["i", "me", "you", "we", "us", "it", "he", "she", "him", "they", "them", "one", "this", "what", "who",
          "mine", "yours", "which", "whose"]:
    add(w, w, "pron")
adv = {
    "gladly": "cue=volition", "like": "cue=volition", "rather": "cue=volition", "prefer": "cue=volition",
    "instead": "cue=instead", "alternatively": "cue=instead", "unfortunately": "cue=regret",
    "not": "cue=neg", "never": "cue=neg", "cannot": "cue=neg", "can't": "cue=neg", "won't": "cue=neg",
    "don't": "cue=neg", "doesn't": "cue=neg", "isn't": "cue=neg",
    "so": "cue=conclusion", "thus": "cue=conclusion", "finally": "cue=conclusion", "then": "cue=then",
    "agreed": "cue=agree", "okay": "cue=agree", "ok": "cue=agree", "yes": "cue=agree", "fine": "cue=agree",
    "please": "-", "of course": "-", "perhaps": "-", "maybe": "-", "also": "-", "only": "-", "very": "-",
    "how": "-", "when": "-", "where": "-", "well": "-", "again": "-", "now": "-", "soon": "-", "here": "-",
    "there": "-", "together": "-", "already": "-", "however": "-", "exactly": "-", "course": "-",
    "morning": "-", "afternoon": "-", "evening": "-", "sorry": "-", "dear": "-", "regards": "-",
    "thanks": "-", "thank": "-", "hello": "-", "hi": "-", "differently": "-",
}
for w, f in adv.items():
    if " " not in w:
        add(w, w, "adv", f)
for w in ["previous", "last", "earlier", "former"]:
    add(w, "previous", "adj", "cue=previous")
for w in ["upcoming", "following", "new", "other", "important", "short", "whole", "free", "consistent",
          "valid", "unknown", "possible", "available", "first", "best", "project", "planned", "suitable",
          "inconsistent", "calendar"]:
    add(w, w, "adj")
for w in ["review", "project", "meeting", "meetings", "appointment", "appointments", "proposal", "proposals",
          "suggestion", "time", "times", "date", "dates", "weekday", "discussion", "session", "call",
          "talk", "message", "answer", "example", "instance", "words", "word", "expression", "office",
          "room", "team", "question", "questions", "agenda", "server", "cosma", "period", "correction",
          "interpretation", "end", "start", "calendar", "slot", "slots", "clock"]:
    add(w, w, "noun")

verb(["meet", "meets", "meeting", "met", "see"], "meet", "meet-frame")
verb(["suit", "suits", "suited", "work", "works", "fits", "fit"], "suit", "suit-frame")
verb(["come", "comes", "attend", "make"], "come", "come-frame")
verb(["accept", "accepts", "accepted", "agree", "agrees", "confirm", "confirms"], "accept", "accept-frame")
verb(["cancel", "cancels", "cancelled", "canceled", "call+off"], "cancel", "cancel-frame")
verb(["propose", "proposes", "proposed", "suggest", "suggests", "suggested"], "propose", "propose-frame")
verb(["reject", "rejects", "rejected", "decline", "declines", "declined", "refuse"], "reject", "reject-frame")
verb(["fix", "fixes", "fixed", "settle", "settled", "schedule", "scheduled", "take+place", "takes+place"],
     "fix", "fix-frame")
verb(["mean", "meant", "means"], "mean", "mean-frame")
for f in ["correct", "understood", "understand", "found", "find", "provide", "give", "know", "knows",
          "rephrase", "hope", "think", "write", "take", "takes", "connect", "lies", "has", "hear", "let",
          "exist", "exists"]:
    verb([f], f, "other-frame")
verb(["is", "are", "be", "was", "were", "been", "would", "'s"], "be", "copula-frame")
verb(["can", "could", "will", "shall", "should", "may", "might", "must", "have", "had", "do", "does", "did",
      "want", "wants", "need", "needs", "am"], "aux", "modal-frame")
for w in ["that", "because", "whether", "if", "although", "but", "since", "unless", "while"]:
    add(w, w, "misc", "clause=1")
for w in ["and", "or", "as", "than", "nor"]:
    add(w, w, "misc")

seen = set()
out = ["# English full-form lexicon: surface, lemma, pos, features, frame-id (tab-separated)",
       "# Particle verbs appear as stem+particle keys."]
for r in rows:
    key = (r[0], r[1], r[2])
    if key in seen:
        continue
    seen.add(key)
    out.append("\t".join(r))
OUT.write_text("\n".join(out) + "\n", encoding="utf-8")
print(f"wrote {len(out)} lines to {OUT}")
