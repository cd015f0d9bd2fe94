"""Heuristic taxonomy induction from a mined concept tree.

Two passes shape the hierarchy. Occurrence merging collapses every concept to
a single node, folding counts together; the survivor is the occurrence with
the highest count. Sibling promotion then lifts a concept next to its parent
whenever the association evidence binds it more strongly to the grandparent.
"""

from __future__ import annotations

import json
from pathlib import Path

from .mining import AssociationMatrix, FpTree, header_rank


class HNode:
    __slots__ = ("concept", "count", "parent", "children")

    def __init__(self, concept: int | None, count: int, parent: "HNode | None"):
        self.concept = concept
        self.count = count
        self.parent = parent
        self.children: dict[int, HNode] = {}


def max_count_occurrence(occurrences: list[HNode], positions: dict[int, int]) -> HNode:
    """Survivor choice: highest count, ties resolved by earliest breadth-first
    position (positions maps id(node) to its index in the traversal)."""
    return min(occurrences, key=lambda n: (-n.count, positions[id(n)]))


class ConceptHierarchy:
    """Rooted concept tree; the root is artificial and carries no concept."""

    def __init__(self, rank: dict[int, int] | None = None):
        self.root = HNode(None, 0, None)
        # traversal order for concepts, inherited from the mining header
        self._rank = rank or {}

    @classmethod
    def from_fp_tree(cls, tree: FpTree) -> "ConceptHierarchy":
        hierarchy = cls(rank=header_rank(tree.header))

        def copy(src, parent: HNode) -> None:
            node = HNode(src.concept, src.count, parent)
            parent.children[src.concept] = node
            for child in src.children.values():
                copy(child, node)

        for child in tree.root.children.values():
            copy(child, hierarchy.root)
        return hierarchy

    def _ordered_children(self, node: HNode) -> list[HNode]:
        return [
            node.children[c]
            for c in sorted(node.children, key=lambda c: (self._rank.get(c, len(self._rank)), c))
        ]

    def nodes(self) -> list[HNode]:
        """Breadth-first order, children visited in header rank order."""
        out = []
        queue = [self.root]
        while queue:
            node = queue.pop(0)
            out.append(node)
            queue.extend(self._ordered_children(node))
        return out

    def concept_nodes(self) -> list[HNode]:
        return [n for n in self.nodes() if n.concept is not None]

    def find(self, concept_id: int) -> HNode | None:
        for node in self.concept_nodes():
            if node.concept == concept_id:
                return node
        return None

    def depth(self, node: HNode) -> int:
        d = 0
        while node.parent is not None:
            node = node.parent
            d += 1
        return d

    def total_depth(self) -> int:
        return sum(self.depth(n) for n in self.concept_nodes())

    def max_depth(self) -> int:
        return max((self.depth(n) for n in self.concept_nodes()), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """(child concept, parent concept) pairs; top-level concepts excluded."""
        return [
            (n.concept, n.parent.concept)
            for n in self.concept_nodes()
            if n.parent is not None and n.parent.concept is not None
        ]

    # -- occurrence merging ------------------------------------------------

    def merge_occurrences(self) -> int:
        """Collapse duplicate concepts until each appears exactly once.

        Every step folds one occurrence into that concept's survivor, so the
        node count strictly decreases and the loop terminates. Returns the
        number of folds performed.
        """
        merges = 0
        while True:
            order = self.nodes()
            positions = {id(n): i for i, n in enumerate(order)}
            by_concept: dict[int, list[HNode]] = {}
            duplicated = None
            for node in order:
                if node.concept is None:
                    continue
                group = by_concept.setdefault(node.concept, [])
                group.append(node)
                if len(group) == 2 and duplicated is None:
                    duplicated = node.concept
            if duplicated is None:
                return merges
            occs = by_concept[duplicated]
            survivor = max_count_occurrence(occs, positions)
            victim = next(o for o in occs if o is not survivor)
            self._fold(survivor, victim)
            merges += 1

    def _fold(self, survivor: HNode, victim: HNode) -> None:
        survivor.count += victim.count
        parent = victim.parent
        del parent.children[victim.concept]
        branch = self._branch_toward(victim, survivor)
        if branch is not None:
            # survivor sits below the victim: keep its branch, lift it into
            # the victim's place before folding the remaining children
            del victim.children[branch.concept]
            for child in list(victim.children.values()):
                self._graft(survivor, child)
            self._graft(parent, branch)
        else:
            for child in list(victim.children.values()):
                self._graft(survivor, child)

    @staticmethod
    def _branch_toward(ancestor: HNode, node: HNode) -> HNode | None:
        """The child of ancestor whose subtree contains node, if any."""
        prev, cur = node, node.parent
        while cur is not None:
            if cur is ancestor:
                return prev
            prev, cur = cur, cur.parent
        return None

    def _graft(self, parent: HNode, child: HNode) -> None:
        existing = parent.children.get(child.concept)
        if existing is None:
            parent.children[child.concept] = child
            child.parent = parent
            return
        existing.count += child.count
        for sub in list(child.children.values()):
            self._graft(existing, sub)

    # -- sibling promotion ---------------------------------------------------

    def promote_siblings(self, assoc: AssociationMatrix) -> int:
        """Lift concepts bound more strongly to their grandparent.

        A node moves up when conf(c => parent) < conf(c => grandparent);
        passes repeat until none moves. Every promotion shortens the node's
        path to the root, so the pass count is bounded by the total depth.
        Returns the number of promotions.
        """
        promotions = 0
        while True:
            moved = False
            for node in reversed(self.nodes()):
                if node.concept is None:
                    continue
                parent = node.parent
                if parent is None or parent.concept is None:
                    continue
                grand = parent.parent
                if grand is None or grand.concept is None:
                    continue
                toward_parent = assoc.confidence(node.concept, parent.concept)
                toward_grand = assoc.confidence(node.concept, grand.concept)
                if toward_parent < toward_grand:
                    del parent.children[node.concept]
                    grand.children[node.concept] = node
                    node.parent = grand
                    promotions += 1
                    moved = True
            if not moved:
                return promotions

    # -- serialization -------------------------------------------------------

    def _payload(self, node: HNode) -> dict:
        return {
            "concept": node.concept,
            "count": node.count,
            "children": [self._payload(node.children[c]) for c in sorted(node.children)],
        }

    def to_json(self) -> str:
        payload = {
            "rank": [[c, r] for c, r in sorted(self._rank.items(), key=lambda cr: cr[1])],
            "root": self._payload(self.root),
        }
        return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "ConceptHierarchy":
        payload = json.loads(text)
        hierarchy = cls(rank={c: r for c, r in payload.get("rank", [])})

        def attach(spec: dict, parent: HNode | None) -> HNode:
            node = HNode(spec["concept"], spec["count"], parent)
            for child_spec in spec["children"]:
                child = attach(child_spec, node)
                node.children[child.concept] = child
            return node

        hierarchy.root = attach(payload["root"], None)
        return hierarchy

    def to_text(self, names: dict[int, str] | None = None) -> str:
        lines: list[str] = []

        def walk(node: HNode, depth: int) -> None:
            if node.concept is not None:
                name = names.get(node.concept, f"C{node.concept}") if names else f"C{node.concept}"
                lines.append("  " * depth + f"{name} ({node.count})")
            for child in self._ordered_children(node):
                walk(child, depth + (0 if node.concept is None else 1))

        walk(self.root, 0)
        return "\n".join(lines) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "ConceptHierarchy":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def build_hierarchy(
    tree: FpTree, assoc: AssociationMatrix, stats: dict | None = None
) -> ConceptHierarchy:
    """Merge occurrences, then promote siblings to the fixed point."""
    hierarchy = ConceptHierarchy.from_fp_tree(tree)
    merges = hierarchy.merge_occurrences()
    promotions = hierarchy.promote_siblings(assoc)
    if stats is not None:
        stats["merges"] = merges
        stats["promotions"] = promotions
    return hierarchy
