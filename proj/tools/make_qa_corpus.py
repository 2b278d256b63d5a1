#!/usr/bin/env python3
# Copyright 2026 The Hearings Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Generate the bundled question/answer mini-corpora.

Three files are written: an AMA-style and a UK-Parliament-style training
set (balanced question/answer rows) and a hearing-style test set whose
templates are disjoint from the training templates.  Output is fully
determined by --seed.
"""

import argparse
import csv
import random
from pathlib import Path

TOPICS = [
    "the budget", "border security", "drug pricing", "the census", "election security",
    "broadband access", "veterans' care", "the postal service", "climate resilience",
    "student loans", "cybersecurity", "food safety", "rail safety", "water infrastructure",
    "the pandemic response", "wildfire funding", "housing costs", "the energy grid",
    "supply chains", "small business lending", "opioid treatment", "air traffic control",
    "nuclear waste", "farm subsidies", "tax enforcement", "child care", "public health data",
]
THINGS = [
    "the new rule", "your agency", "this program", "the contract", "the audit", "the report",
    "the pilot project", "the grant process", "the backlog", "the waiver", "the proposal",
    "the inspection regime", "the hiring freeze", "the data system", "the settlement",
]
PEOPLE = ["your staff", "the department", "the minister", "the board", "the inspectors",
          "local officials", "the contractors", "the regulators", "the states"]
NUMBERS = ["two", "three", "five", "ten", "twelve", "forty", "a hundred", "several"]

AMA_Q = [
    "What is the hardest part of working on {t}?",
    "How did you first get interested in {t}?",
    "Do you think {x} will actually change anything?",
    "Why does {x} take so long?",
    "Which mistake about {t} do people make most often?",
    "If you could change one thing about {x}, what would it be?",
    "Is it true that {p} ignore most complaints about {t}?",
    "Can you explain how {x} works in plain terms?",
    "What advice would you give someone starting out in {t}",
    "Have you ever regretted a decision about {x}?",
    "Where do you see {t} in {n} years?",
    "Who has the final say over {x}?",
    "Any thoughts on how {p} handle {t}?",
    "How much of your week goes to {t}?",
    "Would you do it all again knowing what you know about {x}?",
]
AMA_A = [
    "Honestly the hardest part is the paperwork around {x}.",
    "I got into {t} almost by accident after college.",
    "It depends a lot on {p}, but I'm cautiously optimistic.",
    "Mostly because {x} has to clear {n} separate reviews.",
    "The biggest misconception is that {t} is simple. It isn't.",
    "I would make {x} far more transparent.",
    "No, that's a myth. {p} read every complaint we forward.",
    "Sure. {x} basically collects data and then {p} act on it.",
    "Start small, find a mentor, and read everything about {t}.",
    "Yes, once. We rushed {x} and it showed.",
    "In {n} years I expect {t} to look completely different.",
    "Technically {p} do, although it's shared in practice.",
    "Great question, and I think {p} are doing better than people assume.",
    "Probably {n} hours, sometimes more when {x} is due.",
    "Absolutely. Working on {t} has been the best job I've had.",
    "Thanks for asking! We covered {t} in detail last year.",
]
UK_Q = [
    "Will the Minister set out what steps are being taken on {t}?",
    "Does the Secretary of State agree that {x} has failed?",
    "What assessment has the Department made of {x}?",
    "Can the Minister tell the House when {x} will be published?",
    "Is my right hon. Friend aware of the concerns about {t} in my constituency?",
    "Will the Government commit to reviewing {x} within {n} months?",
    "How many people have been affected by {x}?",
    "Why have {p} not been consulted on {t}?",
    "What discussions has the Minister had with {p} regarding {t}?",
    "Will the Leader of the House find time for a debate on {t}?",
    "Does the Minister accept that {p} need more support on {t}?",
    "When will the Government respond to the report on {t}?",
]
UK_A = [
    "The Government are taking forward a comprehensive package on {t}.",
    "I thank my hon. Friend for raising {t}, and I will write to her.",
    "We have made a full assessment of {x} and will publish it shortly.",
    "The review of {x} will conclude within {n} months.",
    "I am happy to meet the hon. Gentleman to discuss {t}.",
    "We have invested significantly in {t} over the past {n} years.",
    "The Department continues to work closely with {p}.",
    "I do not accept that characterisation of {x}.",
    "My right hon. Friend makes an important point about {t}.",
    "Officials are engaging with {p} on exactly this matter.",
    "We will set out further details on {x} in due course.",
    "I can confirm that {x} remains under active review.",
]
# Hearing-style test templates; none appear in the training pools.
TEST_Q = [
    "Director, can you tell this committee why {x} was delayed?",
    "So your testimony is that nobody at {p} knew about {t}?",
    "How many complaints about {t} did you receive last year?",
    "Did you personally approve {x}?",
    "Isn't it the case that {p} warned you about {t}?",
    "What are you doing right now to fix {x}?",
    "Would you commit to providing the committee with documents on {x}?",
    "Why should taxpayers trust {p} on {t}?",
    "When did you first learn of problems with {x}?",
    "Could you walk us through what happened with {x}",
    "Are you aware that {n} states have raised concerns about {t}?",
    "Explain to me how {x} is supposed to work.",
]
TEST_A = [
    "Congressman, we became aware of {x} in the spring.",
    "That is correct, and we have since taken corrective action on {t}.",
    "We received roughly {n} thousand complaints about {t}.",
    "I did not, Senator. That decision was made by {p}.",
    "I would have to check the record on {x} and get back to you.",
    "We have assigned {n} additional staff to {x}.",
    "Yes, we will provide those documents on {t}.",
    "I understand the frustration, and {p} share it.",
    "The problems with {x} were first reported to me last year.",
    "We are working with {p} to address {t} as quickly as possible.",
    "Our analysis of {t} shows steady improvement.",
    "I appreciate the question. Let me be clear that {x} is a priority.",
]


def fill(rng, template):
    return template.format(t=rng.choice(TOPICS), x=rng.choice(THINGS),
                           p=rng.choice(PEOPLE), n=rng.choice(NUMBERS))


def generate(rng, q_templates, a_templates, n_rows, source):
    rows, seen = [], set()
    want = {"question": n_rows // 2, "answer": n_rows - n_rows // 2}
    pools = {"question": q_templates, "answer": a_templates}
    attempts = 0
    while any(want.values()):
        attempts += 1
        if attempts > n_rows * 200:
            raise SystemExit(f"template space too small for {n_rows} unique rows")
        label = "question" if want["question"] >= want["answer"] else "answer"
        text = fill(rng, rng.choice(pools[label]))
        if rng.random() < 0.3:
            text = text[0].lower() + text[1:] if label == "question" else text
        key = text.lower()
        if key in seen:
            continue
        seen.add(key)
        want[label] -= 1
        rows.append({"text": text, "label": label, "source": source})
    rng.shuffle(rows)
    return rows


def write(path, rows, with_source):
    fields = ["text", "label"] + (["source"] if with_source else [])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=fields, delimiter="\t", lineterminator="\n",
                           extrasaction="ignore", quoting=csv.QUOTE_NONE, escapechar="\\")
        w.writeheader()
        w.writerows(rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="data/qa")
    ap.add_argument("--seed", type=int, default=20240611)
    ap.add_argument("--ama-rows", type=int, default=1400)
    ap.add_argument("--ukparl-rows", type=int, default=1000)
    ap.add_argument("--test-rows", type=int, default=300)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    write(out / "ama_train.tsv", generate(rng, AMA_Q, AMA_A, args.ama_rows, "AMA"), True)
    write(out / "ukparl_train.tsv", generate(rng, UK_Q, UK_A, args.ukparl_rows, "UKParl"), True)
    write(out / "hand_labeled_test.tsv",
          generate(rng, TEST_Q, TEST_A, args.test_rows, "HandLabeled"), False)


if __name__ == "__main__":
    main()
