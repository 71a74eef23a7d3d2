"""Regenerate the German full-form lexicon (src/schedlang/extraction/data/lexicon_de.tsv)."""

from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "schedlang" / "extraction" / "data" / "lexicon_de.tsv"

rows = []
def add(surface, lemma, pos, feats='-', frame='-'):
    rows.append((surface, lemma, pos, feats, frame))


for i, w in enumerate(["montag","dienstag","mittwoch","donnerstag","freitag","samstag","sonntag"], 1):
    add(w, w.capitalize(), "noun", f"weekday={i}")
add("sonnabend", "Samstag", "noun", "weekday=6")
months = [("januar",1),("jan",1),("februar",2),("feb",2),("märz",3),("maerz",3),("april",4),("apr",4),
          ("mai",5),("juni",6),("jun",6),("juli",7),("jul",7),("august",8),("aug",8),("september",9),
          ("sep",9),("sept",9),("oktober",10),("okt",10),("november",11),("nov",11),("dezember",12),("dez",12)]
for w, m in months:
    add(w, w.capitalize(), "noun", f"month={m}")
for w, r in [("heute","today"),("morgen","tomorrow"),("übermorgen","dayaftertomorrow")]:
    add(w, w, "adv", f"rel={r}")
for w in ["nächste","nächsten","nächster","nächstes","kommende","kommenden","kommender"]:
    add(w, "nächst", "adj", "mod=next")
for w in ["diese","dieser","diesen","dieses","diesem"]:
    add(w, "dies", "det", "mod=this")
add("woche", "Woche", "noun", "unit=week")
add("wochen", "Woche", "noun", "unit=week")
for w in ["stunde","stunden"]:
    add(w, "Stunde", "noun", "unit=hour;minutes=60")
for w in ["minute","minuten"]:
    add(w, "Minute", "noun", "unit=minute;minutes=1")
add("uhr", "Uhr", "noun", "unit=clock")
add("h", "Uhr", "misc", "unit=clock")
add("tag", "Tag", "noun", "unit=day")
add("tage", "Tag", "noun", "unit=day")
add("tagen", "Tag", "noun", "unit=day")
for w, n in [("eine",1),("einer",1),("einen",1),("ein",1),("einem",1)]:
    add(w, "ein", "det", f"count={n}")
for w, n in [("zwei",2),("drei",3),("vier",4),("fünf",5),("sechs",6)]:
    add(w, w, "misc", f"count={n}")
add("halbe", "halb", "adj")
for w in ["am","an","um","zwischen","von","vom","bis","zum","zur","in","im","für","ab","gegen","wegen","über",
          "zu","mit","bei","nach","vor","seit","aus","auf","ohne","beim","ins","durch","statt"]:
    add(w, w, "prep")
for w in ["der","die","das","den","dem","des","mein","meine","meinem","meinen","meiner","ihr","ihre","ihrem",
          "ihren","ihrer","unser","unsere","unserem","unseren","jede","jeden","alle"]:
    add(w, {"der":"der","die":"der","das":"der","den":"der","dem":"der","des":"der"}.get(w, w), "det")
for w in ["kein","keine","keinen","keinem","keiner"]:
    add(w, "kein", "det", "cue=neg")
for w in ["ich","mich","mir","sie","ihnen","wir","uns","es","du","dich","dir","euch","er","ihm","ihn","man",
          "das","dies","was","wer","wen","wem","ihr"]:
    add(w, w, "pron")
adv = {
    "gern":"cue=volition","gerne":"cue=volition","lieber":"cue=volition",
    "stattdessen":"cue=instead","statt":"cue=instead","alternativ":"cue=instead",
    "leider":"cue=regret","nicht":"cue=neg","nie":"cue=neg","nein":"cue=neg",
    "also":"cue=conclusion","somit":"cue=conclusion","endgültig":"cue=conclusion",
    "dann":"cue=then","einverstanden":"cue=agree","okay":"cue=agree","ok":"cue=agree","ja":"cue=agree",
    "natürlich":"-","bitte":"-","vielleicht":"-","doch":"-","schon":"-","noch":"-","auch":"-","nur":"-",
    "sehr":"-","gut":"-","wie":"-","wann":"-","wo":"-","eventuell":"-","etwa":"-","ganztags":"-",
    "vormittags":"-","nachmittags":"-","abends":"-","früh":"-","spät":"-","später":"-","früher":"-",
    "wieder":"-","jetzt":"-","bald":"-","gleich":"-","sofort":"-","hier":"-","da":"-","so":"-",
    "zusammen":"-","bereits":"-","allerdings":"-","eher":"-","ebenfalls":"-","genau":"-","prima":"cue=agree",
    "herzlich":"-","herzliche":"-","recht":"-","mal":"-","etwas":"-","leicht":"-","immer":"-",
}
for w, f in adv.items():
    add(w, w, "adv", f)
for w in ["vorige","vorigen","voriger","voriges","letzte","letzten","letzter","letztes","bisherige","bisherigen"]:
    add(w, "vorig", "adj", "cue=previous")
for w in ["bevorstehende","bevorstehenden","folgende","folgenden","neue","neuen","neuer","andere","anderen",
          "anderer","wichtige","wichtigen","kurze","kurzen","kurzes","ganze","ganzen","freie","freien",
          "konsistent","gültig","unbekannt","möglich","frei","geehrte","geehrter","liebe","lieben","freundlichen",
          "besten","viele","vielen","beste","gemeinsame","gemeinsamen","nächstmögliche","folgender","geplante",
          "geplanten","vollständige","unvollständige","widersprüchlich","eindeutig","genauer","verfügbar",
          "passende","passenden","erste","ersten","gewünschte","gewünschten"]:
    add(w, w, "adj")
nouns = ["projektbegutachtung","begutachtung","projekt","projekts","termin","termine","termins","terminen",
         "vorschlag","vorschläge","vorschlags","zeit","zeiten","zeitangabe","zeitangaben","datum","wochentag",
         "besprechung","sitzung","meeting","gespräch","gruß","grüße","grüßen","dank","nachricht","antwort",
         "treffens","beispiel","uhrzeit","verfügung","tagesordnung","büro","raum","herr","frau","kollege",
         "kollegin","team","abteilung","frage","fragen","wörter","wort","angabe","angaben","kalender",
         "cosma","ordnung","nachmittag","vormittag","abend","mittag","morgens","mittags","bericht","review",
         "planung","abstimmung","rückmeldung","bescheid"]
for w in nouns:
    add(w, w.capitalize(), "noun")
add("treffen", "Treffen", "noun")

def verb(forms, lemma, frame):
    for f in forms:
        add(f, lemma, "verb", "-", frame)
verb(["treffen","treffe","triffst","trifft","trefft","getroffen","sehen","sehe","sieht"], "treffen", "meet-frame")
verb(["passen","passe","passt","paßt","gepasst","geht","gehen","ginge","klappt","klappen","klappe","passend"],
     "passen", "suit-frame")
verb(["kommen","komme","kommst","kommt","gekommen","teilnehmen"], "kommen", "come-frame")
verb(["sagen","sage","sagt","sagst","gesagt"], "sagen", "other-frame")
verb(["zusagen","zugesagt","akzeptiere","akzeptieren","akzeptiert","annehmen","nehme+an"], "zusagen", "accept-frame")
verb(["sage+zu","sagen+zu","sagt+zu"], "zusagen", "accept-frame")
verb(["absagen","abgesagt","sage+ab","sagen+ab","sagt+ab","stornieren"], "absagen", "cancel-frame")
verb(["schlage","schlagen","schlägt"], "schlagen", "other-frame")
verb(["vorschlagen","vorgeschlagen","schlage+vor","schlagen+vor","schlägt+vor"], "vorschlagen", "propose-frame")
verb(["ablehnen","abgelehnt","lehne+ab","lehnen+ab","lehnt+ab"], "ablehnen", "reject-frame")
verb(["lehne","lehnen","lehnt"], "lehnen", "other-frame")
verb(["stattfinden","stattfindet","findet+statt","finden+statt"], "stattfinden", "fix-frame")
verb(["findet","finden","finde"], "finden", "other-frame")
verb(["festlegen","festgelegt","lege+fest","legen+fest","vereinbaren","vereinbart","vereinbare",
      "bestätige","bestätigen","bestätigt","fixieren","fixiert"], "festlegen", "fix-frame")
verb(["lege","legen","legt"], "legen", "other-frame")
verb(["meinte","meine","meinen","meint","gemeint"], "meinen", "mean-frame")
for f in ["korrigieren","korrigiere","verstanden","verstehen","verstehe","angeben","entnehmen","formulieren",
          "danke","danken","freue","freuen","schreiben","schreibe","melde","melden","bitten",
          "waren","hoffe","hoffen","denke","denken","glaube","glauben","wissen","weiß","bleiben","bleibt",
          "geben","gibt","steht","stehe","konnte","kennt","kennen","kenne","gefunden","liegt","liegen",
          "verbinden","verbunden"]:
    verb([f], f, "other-frame")
for w in ["ende","anfang","korrektur","deutung","terminangabe","uhrzeiten"]:
    add(w, w.capitalize(), "noun")
for w in ["anders","ebenso"]:
    add(w, w, "adv")
for w in ["früheren","frühere","deren","dein","deine","deiner","deinen","ihrem"]:
    add(w, w, "adj" if w.startswith("früh") else "det")
verb(["bin","bist","ist","sind","seid","sein","wäre","wären","war","sei"], "sein", "copula-frame")
verb(["habe","hat","haben","hast","hätte","hätten","werde","wird","werden","wirst","wurde","wurden","würde",
      "würden","kann","können","kannst","könnte","könnten","könntest","könntet","muss","muß","müssen","möchte","möchten",
      "will","wollen","soll","sollen","sollten","darf","dürfen","lässt","lassen","lasse"], "hilfsverb", "modal-frame")
for w in ["dass","daß","weil","ob","wenn","falls","obwohl","sondern","aber","damit","sofern"]:
    add(w, w, "misc", "clause=1")
for w in ["und","oder","sowie","bzw","beziehungsweise","hallo","tschüss","mfg","oh","als"]:
    add(w, w, "misc")

seen = set()
out = ["# German full-form lexicon: surface, lemma, pos, features, frame-id (tab-separated)",
       "# Particle verbs appear as stem+particle keys."]
for r in rows:
    key = (r[0], r[1], r[2])
    if key in seen:
        continue
    seen.add(key)
    out.append("\t".join(r))
OUT.write_text("\n".join(out) + "\n", encoding="utf-8")
print(f"wrote {len(out)} lines to {OUT}")
