"""Phrase recognition over token streams with a merged prefix automaton.

Every concept phrase (canonical form and synonyms) is folded into one
deterministic state table; scanning a stream then takes a single pass with
greedy longest-match semantics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import DuplicatePhraseError
from .terms import ConceptLexicon

START = 0
RESET = 0
ACCEPT = -2
NO_TERM = -1


@dataclass(frozen=True)
class Match:
    concept_id: int
    start: int
    length: int

    @property
    def end(self) -> int:
        return self.start + self.length


class StateTable:
    """Merged prefix automaton over phrase words.

    State 0 is the scan start. Each phrase carves a path of word transitions;
    shared prefixes share states. A state is accepting when some phrase ends
    there, and then carries that phrase's concept id.
    """

    def __init__(self):
        self.alphabet: list[str] = []
        # transitions[state][word] -> next state
        self.transitions: list[dict[str, int]] = [{}]
        self.term_ids: list[int] = [NO_TERM]

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    @classmethod
    def build(cls, lexicon: ConceptLexicon) -> "StateTable":
        table = cls()
        seen_words: set[str] = set()
        for phrase, concept_id in lexicon.phrases():
            words = phrase.split()
            if not words:
                continue
            for w in words:
                if w not in seen_words:
                    seen_words.add(w)
                    table.alphabet.append(w)
            state = START
            for w in words:
                nxt = table.transitions[state].get(w)
                if nxt is None:
                    nxt = len(table.transitions)
                    table.transitions[state][w] = nxt
                    table.transitions.append({})
                    table.term_ids.append(NO_TERM)
                state = nxt
            if table.term_ids[state] != NO_TERM:
                raise DuplicatePhraseError(
                    f"phrase {phrase!r} already accepted for concept {table.term_ids[state]}, "
                    f"cannot reassign to concept {concept_id}"
                )
            table.term_ids[state] = concept_id
        return table

    def as_grid(self) -> list[list[int]]:
        """Rectangular view: one row per state, one column per alphabet word.

        Cell values: a positive state number is a transition, 0 resets the
        scan, ACCEPT (-2) marks that the current state already completed a
        phrase. The start row never accepts, so its empty cells are 0.
        """
        grid = []
        for state, row in enumerate(self.transitions):
            accepting = self.term_ids[state] != NO_TERM
            fallback = ACCEPT if accepting else RESET
            grid.append([row.get(word, fallback) for word in self.alphabet])
        return grid

    def scan(self, tokens: list[str] | tuple[str, ...]) -> list[Match]:
        """Single left-to-right pass, emitting non-overlapping matches.

        At each position the longest phrase starting there wins; if no phrase
        starts there the scan moves on by one token.
        """
        matches: list[Match] = []
        pos = 0
        n = len(tokens)
        while pos < n:
            state = START
            best_len = 0
            best_id = NO_TERM
            depth = 0
            while pos + depth < n:
                nxt = self.transitions[state].get(tokens[pos + depth])
                if nxt is None:
                    break
                state = nxt
                depth += 1
                if self.term_ids[state] != NO_TERM:
                    best_len = depth
                    best_id = self.term_ids[state]
            if best_len:
                matches.append(Match(best_id, pos, best_len))
                pos += best_len
            else:
                pos += 1
        return matches

    def concept_ids(self, tokens: list[str] | tuple[str, ...]) -> set[int]:
        return {m.concept_id for m in self.scan(tokens)}

    def to_json(self) -> str:
        payload = {
            "alphabet": self.alphabet,
            "grid": self.as_grid(),
            "term_ids": self.term_ids,
        }
        return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "StateTable":
        payload = json.loads(text)
        table = cls()
        table.alphabet = list(payload["alphabet"])
        table.term_ids = list(payload["term_ids"])
        table.transitions = []
        for row in payload["grid"]:
            table.transitions.append(
                {
                    word: target
                    for word, target in zip(table.alphabet, row)
                    if target > 0
                }
            )
        return table

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "StateTable":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))
