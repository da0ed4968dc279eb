"""Regenerates crates/testkit/data/sentences.txt: 1000 conversational English
sentences built from a small template grammar with a fixed seed."""
import random

rng = random.Random(20240601)

subjects = ["I", "we", "you", "they", "my sister", "the doctor", "our neighbour", "Maria",
            "the kids", "my boss", "José", "the team", "everyone", "nobody", "he", "she",
            "the old man", "your friend", "Zoë", "the committee"]
verbs = ["saw", "bought", "fixed", "forgot", "found", "painted", "sold", "borrowed", "cleaned",
         "explained", "ordered", "missed", "visited", "called", "carried", "described",
         "lost", "noticed", "finished", "recorded"]
objects = ["the car", "a new bicycle", "the kitchen window", "his phone", "the report",
           "twelve apples", "the blue chair", "an old map", "the garden fence", "the last train",
           "her keys", "a cup of coffee", "the meeting notes", "the café on the corner",
           "three tickets", "the broken clock", "a long letter", "the results", "the piano",
           "our tent"]
times = ["yesterday", "last week", "on Monday", "this morning", "after lunch", "in 2019",
         "at 7 o'clock", "before the storm", "twice", "again", "at the weekend", "in March",
         "around noon", "an hour ago", "tonight"]
fillers = ["uh", "um", "well", "you know", "like", "I mean", "so"]
openers = ["Honestly", "Actually", "Okay", "Right", "Anyway", "So", "Well", "Yeah"]
questions = ["Did {s} really {v0} {o}?", "Why would {s} {v0} {o} {t}?",
             "Where did {s} put {o}?", "Have you ever {vp} {o}?", "Who {v} {o} {t}?"]
base = {"saw": "see", "bought": "buy", "fixed": "fix", "forgot": "forget", "found": "find",
        "painted": "paint", "sold": "sell", "borrowed": "borrow", "cleaned": "clean",
        "explained": "explain", "ordered": "order", "missed": "miss", "visited": "visit",
        "called": "call", "carried": "carry", "described": "describe", "lost": "lose",
        "noticed": "notice", "finished": "finish", "recorded": "record"}
participle = dict(base)
participle.update({k: k for k in base})
participle.update({"saw": "seen", "forgot": "forgotten", "sold": "sold", "lost": "lost",
                   "bought": "bought", "found": "found"})
tails = ["", "", "", " and it was fine", " but it didn't work", " because it's cheaper",
         ", which was a surprise", " — can you believe it", " and then we left",
         " for about 20 minutes", " without asking anyone", "... I think"]


def cap(s):
    return s[0].upper() + s[1:]


def sentence():
    s, v, o, t = (rng.choice(x) for x in (subjects, verbs, objects, times))
    kind = rng.random()
    if kind < 0.2:
        q = rng.choice(questions)
        return cap(q.format(s=s, v0=base[v], v=v, vp=participle[v], o=o, t=t))
    words = f"{s} {v} {o} {t}{rng.choice(tails)}"
    if rng.random() < 0.35:
        parts = words.split(" ")
        k = rng.randrange(1, len(parts))
        parts.insert(k, rng.choice(fillers) + ("," if rng.random() < 0.4 else ""))
        words = " ".join(parts)
    if rng.random() < 0.3:
        words = f"{rng.choice(openers)}, {words}"
    if rng.random() < 0.1:
        words = f"\"{cap(words)}\", she said"
    end = rng.choice([".", ".", ".", "!", "..."])
    # stray spacing as found in crowd-sourced transcripts
    if rng.random() < 0.04:
        words = words.replace(" ", "  ", 1)
    if rng.random() < 0.03:
        end = " " + end
    return cap(words) + end


seen = []
while len(seen) < 1000:
    s = sentence()
    if s not in seen:
        seen.append(s)
with open("crates/testkit/data/sentences.txt", "w", encoding="utf-8") as f:
    f.write("\n".join(seen) + "\n")
