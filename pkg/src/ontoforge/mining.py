"""Frequent concept-set mining over paragraph transactions.

Paragraphs become transactions (the set of concept ids a paragraph mentions),
a compressed prefix tree aggregates them, and pattern growth over conditional
bases enumerates every concept set whose support strictly exceeds the
threshold. Pairwise supports feed the association confidence matrix.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .corpus import Corpus
from .errors import ConceptAbsentError, DomainError
from .lexer import StateTable


class TransactionDb:
    """One transaction per paragraph: the distinct concept ids it mentions."""

    def __init__(self, transactions: list[frozenset[int]]):
        self.transactions = transactions

    def __len__(self) -> int:
        return len(self.transactions)

    def __iter__(self):
        return iter(self.transactions)

    @classmethod
    def from_corpus(cls, corpus: Corpus, table: StateTable) -> "TransactionDb":
        """Scan every paragraph; paragraphs mentioning no concept are dropped."""
        transactions = []
        for para in corpus.paragraphs:
            ids = table.concept_ids(para.tokens)
            if ids:
                transactions.append(frozenset(ids))
        return cls(transactions)

    def support(self, itemset: frozenset[int] | set[int]) -> int:
        """Transactions containing every concept in the set."""
        itemset = frozenset(itemset)
        return sum(1 for t in self.transactions if itemset <= t)

    def concept_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for t in self.transactions:
            for c in t:
                counts[c] = counts.get(c, 0) + 1
        return counts

    def to_json(self) -> str:
        payload = {"transactions": [sorted(t) for t in self.transactions]}
        return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "TransactionDb":
        payload = json.loads(text)
        return cls([frozenset(t) for t in payload["transactions"]])

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "TransactionDb":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


class FpNode:
    __slots__ = ("concept", "count", "parent", "children", "link")

    def __init__(self, concept: int | None, parent: "FpNode | None"):
        self.concept = concept
        self.count = 0
        self.parent = parent
        self.children: dict[int, FpNode] = {}
        self.link: FpNode | None = None


def header_rank(header: list[tuple[int, int]]) -> dict[int, int]:
    """Position of each concept in the header ordering."""
    return {concept: i for i, (concept, _) in enumerate(header)}


class FpTree:
    """Prefix-shared transaction tree with a support-ordered header table.

    The header lists every concept with support strictly above theta, sorted
    by support descending, ties broken by the smaller concept id. Transactions
    are inserted with their items in header order so shared prefixes collapse.
    """

    def __init__(self, theta: int):
        if theta < 0:
            raise DomainError(f"theta must be >= 0, got {theta}")
        self.theta = theta
        self.root = FpNode(None, None)
        self.header: list[tuple[int, int]] = []
        self._links: dict[int, FpNode] = {}
        self._link_tails: dict[int, FpNode] = {}

    @classmethod
    def from_transactions(cls, db: TransactionDb, theta: int) -> "FpTree":
        return cls._from_weighted(((sorted(t), 1) for t in db), db.concept_counts(), theta)

    @classmethod
    def _from_paths(cls, paths: list[tuple[list[int], int]], theta: int) -> "FpTree":
        counts: dict[int, int] = {}
        for items, weight in paths:
            for c in items:
                counts[c] = counts.get(c, 0) + weight
        return cls._from_weighted(paths, counts, theta)

    @classmethod
    def _from_weighted(cls, weighted_itemsets, counts: dict[int, int], theta: int) -> "FpTree":
        tree = cls(theta)
        tree.header = sorted(
            ((c, n) for c, n in counts.items() if n > theta),
            key=lambda cn: (-cn[1], cn[0]),
        )
        rank = header_rank(tree.header)
        for items, weight in weighted_itemsets:
            kept = sorted((c for c in items if c in rank), key=rank.__getitem__)
            tree._insert(kept, weight)
        return tree

    def _insert(self, items: list[int], count: int) -> None:
        node = self.root
        for c in items:
            child = node.children.get(c)
            if child is None:
                child = FpNode(c, node)
                node.children[c] = child
                tail = self._link_tails.get(c)
                if tail is None:
                    self._links[c] = child
                else:
                    tail.link = child
                self._link_tails[c] = child
            child.count += count
            node = child

    def header_supports(self) -> dict[int, int]:
        return dict(self.header)

    def _conditional_paths(self, concept: int) -> list[tuple[list[int], int]]:
        paths = []
        node = self._links.get(concept)
        while node is not None:
            path = []
            p = node.parent
            while p is not None and p.concept is not None:
                path.append(p.concept)
                p = p.parent
            if path:
                path.reverse()
                paths.append((path, node.count))
            node = node.link
        return paths

    def frequent_patterns(
        self, theta: int | None = None, max_len: int | None = None
    ) -> dict[frozenset[int], int]:
        """All concept sets with support strictly above theta.

        max_len caps the pattern size; the association matrix only ever needs
        pairs, which keeps growth linear in the pair count.
        """
        if theta is None:
            theta = self.theta
        out: dict[frozenset[int], int] = {}
        self._grow(theta, frozenset(), out, max_len)
        return out

    def _grow(
        self,
        theta: int,
        suffix: frozenset[int],
        out: dict[frozenset[int], int],
        max_len: int | None,
    ) -> None:
        for concept, support in reversed(self.header):
            if support <= theta:
                continue
            pattern = suffix | {concept}
            out[pattern] = support
            if max_len is not None and len(pattern) >= max_len:
                continue
            cond = FpTree._from_paths(self._conditional_paths(concept), theta)
            if cond.header:
                cond._grow(theta, pattern, out, max_len)

    def _node_payload(self, node: FpNode) -> dict:
        return {
            "concept": node.concept,
            "count": node.count,
            "children": [
                self._node_payload(node.children[c]) for c in sorted(node.children)
            ],
        }

    def to_json(self) -> str:
        payload = {
            "theta": self.theta,
            "header": [[c, n] for c, n in self.header],
            "root": {
                "children": [
                    self._node_payload(self.root.children[c])
                    for c in sorted(self.root.children)
                ]
            },
        }
        return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "FpTree":
        payload = json.loads(text)
        tree = cls(payload["theta"])
        tree.header = [(c, n) for c, n in payload["header"]]

        def attach(parent: FpNode, spec: dict) -> None:
            node = FpNode(spec["concept"], parent)
            node.count = spec["count"]
            parent.children[node.concept] = node
            tail = tree._link_tails.get(node.concept)
            if tail is None:
                tree._links[node.concept] = node
            else:
                tail.link = node
            tree._link_tails[node.concept] = node
            for child in spec["children"]:
                attach(node, child)

        for child in payload["root"]["children"]:
            attach(tree.root, child)
        return tree

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "FpTree":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


class AssociationMatrix:
    """Pairwise rule confidences: conf(a => b) = support({a, b}) / support({a}).

    Covers every concept that occurs at least once; pairs that never co-occur
    get confidence zero.
    """

    def __init__(self, concept_ids: list[int], support: dict[int, int], conf: np.ndarray):
        self.concept_ids = concept_ids
        self.support = support
        self.conf = conf
        self._index = {c: i for i, c in enumerate(concept_ids)}

    @classmethod
    def from_transactions(cls, db: TransactionDb) -> "AssociationMatrix":
        tree = FpTree.from_transactions(db, theta=0)
        patterns = tree.frequent_patterns(theta=0, max_len=2)
        support = {next(iter(p)): n for p, n in patterns.items() if len(p) == 1}
        ids = sorted(support)
        index = {c: i for i, c in enumerate(ids)}
        conf = np.zeros((len(ids), len(ids)))
        for i, a in enumerate(ids):
            conf[i, i] = 1.0
        for pattern, n in patterns.items():
            if len(pattern) != 2:
                continue
            a, b = sorted(pattern)
            conf[index[a], index[b]] = n / support[a]
            conf[index[b], index[a]] = n / support[b]
        return cls(ids, support, conf)

    def confidence(self, antecedent: int, consequent: int) -> float:
        i = self._index.get(antecedent)
        j = self._index.get(consequent)
        if i is None:
            raise ConceptAbsentError(f"concept {antecedent} has no support in the transaction db")
        if j is None:
            raise ConceptAbsentError(f"concept {consequent} has no support in the transaction db")
        return float(self.conf[i, j])

    def __contains__(self, concept_id: int) -> bool:
        return concept_id in self._index

    def to_tsv(self, names: dict[int, str] | None = None) -> str:
        def label(c: int) -> str:
            return names[c] if names and c in names else f"C{c}"

        lines = ["concept\t" + "\t".join(label(c) for c in self.concept_ids)]
        for i, a in enumerate(self.concept_ids):
            cells = "\t".join(f"{self.conf[i, j]:.6f}" for j in range(len(self.concept_ids)))
            lines.append(f"{label(a)}\t{cells}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "concept_ids": self.concept_ids,
            "support": [[c, self.support[c]] for c in self.concept_ids],
            "confidence": [
                [self.conf[i, j] for j in range(len(self.concept_ids))]
                for i in range(len(self.concept_ids))
            ],
        }
        return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "AssociationMatrix":
        payload = json.loads(text)
        ids = list(payload["concept_ids"])
        support = {c: n for c, n in payload["support"]}
        conf = np.array(payload["confidence"], dtype=float)
        if conf.size == 0:
            conf = conf.reshape(0, 0)
        return cls(ids, support, conf)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "AssociationMatrix":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))
