"""Knowledge-base triples and OWL rendering.

The ontology couples the concept hierarchy with (concept, property, feedback)
triples. Rendering follows the compact style: one Class element per concept
with a nested subClassOf pointing at its parent, then one ObjectProperty per
triple carrying the concept as its domain and the feedback as a child
element.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

from .errors import TripleParseError
from .corpus import normalize
from .taxonomy import ConceptHierarchy
from .terms import ConceptLexicon

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"

DEFAULT_PROPERTY = "definition"


class PropertySchema:
    """Question properties and the cue phrases that signal each one."""

    def __init__(self, cues: dict[str, list[str]]):
        self.properties = list(cues)
        self.cues = {prop: [tuple(normalize(c)) for c in cue_list] for prop, cue_list in cues.items()}
        seen: dict[tuple[str, ...], str] = {}
        for prop, cue_list in self.cues.items():
            for cue in cue_list:
                if not cue:
                    raise TripleParseError(f"property {prop!r} has an empty cue")
                if cue in seen and seen[cue] != prop:
                    raise TripleParseError(
                        f"cue {' '.join(cue)!r} claimed by both {seen[cue]!r} and {prop!r}"
                    )
                seen[cue] = prop

    @classmethod
    def load(cls, path: str | Path) -> "PropertySchema":
        cues: dict[str, list[str]] = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            head, sep, tail = line.partition(":")
            if not sep:
                raise TripleParseError(f"bad property line {line!r}, expected 'name: cue, cue'")
            prop = " ".join(normalize(head))
            cues[prop] = [c.strip() for c in tail.split(",") if c.strip()]
        if not cues:
            raise TripleParseError(f"no properties defined in {path}")
        return cls(cues)

    @classmethod
    def default(cls) -> "PropertySchema":
        return cls.load(Path(__file__).parent / "data" / "properties.txt")

    def is_property(self, name: str) -> bool:
        return name in self.cues

    def match_all(self, tokens: list[str] | tuple[str, ...]) -> list[str]:
        """Every property with a cue occurrence, ordered by earliest
        occurrence, ties by schema order."""
        hits: list[tuple[int, int, str]] = []
        for order, prop in enumerate(self.properties):
            positions = [
                pos
                for cue in self.cues[prop]
                if (pos := _find_subsequence(tokens, cue)) >= 0
            ]
            if positions:
                hits.append((min(positions), order, prop))
        hits.sort()
        return [prop for _, _, prop in hits]

    def match(self, tokens: list[str] | tuple[str, ...]) -> str | None:
        found = self.match_all(tokens)
        return found[0] if found else None


def _find_subsequence(tokens, phrase: tuple[str, ...]) -> int:
    n = len(phrase)
    for i in range(len(tokens) - n + 1):
        if tuple(tokens[i : i + n]) == phrase:
            return i
    return -1


@dataclass(frozen=True)
class Triple:
    concept_id: int
    property: str
    feedback: str


@dataclass
class KnowledgeBase:
    triples: list[Triple] = field(default_factory=list)

    def __post_init__(self):
        self._index: dict[tuple[int, str], list[str]] = {}
        for t in self.triples:
            self._index.setdefault((t.concept_id, t.property), []).append(t.feedback)

    def add(self, triple: Triple) -> None:
        self.triples.append(triple)
        self._index.setdefault((triple.concept_id, triple.property), []).append(triple.feedback)

    def feedback(self, concept_id: int, prop: str) -> str | None:
        found = self._index.get((concept_id, prop))
        return found[0] if found else None

    def concept_ids(self) -> set[int]:
        return {t.concept_id for t in self.triples}

    @classmethod
    def load_jsonl(
        cls, path: str | Path, lexicon: ConceptLexicon, schema: PropertySchema
    ) -> "KnowledgeBase":
        """Read one JSON object per line: concept (by any known phrase),
        property, feedback."""
        phrase_to_id = {phrase: cid for phrase, cid in lexicon.phrases()}
        kb = cls()
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise TripleParseError(f"invalid JSON: {exc}", line=lineno) from exc
            if not isinstance(record, dict):
                raise TripleParseError("expected a JSON object", line=lineno)
            missing = {"concept", "property", "feedback"} - record.keys()
            if missing:
                raise TripleParseError(f"missing keys: {', '.join(sorted(missing))}", line=lineno)
            concept_phrase = " ".join(normalize(str(record["concept"])))
            cid = phrase_to_id.get(concept_phrase)
            if cid is None:
                raise TripleParseError(f"unknown concept {record['concept']!r}", line=lineno)
            prop = " ".join(normalize(str(record["property"])))
            if not schema.is_property(prop):
                raise TripleParseError(f"unknown property {record['property']!r}", line=lineno)
            feedback = str(record["feedback"]).strip()
            if not feedback:
                raise TripleParseError("empty feedback", line=lineno)
            kb.add(Triple(cid, prop, feedback))
        return kb


def export_owl(
    hierarchy: ConceptHierarchy,
    names: dict[int, str],
    kb: KnowledgeBase | None = None,
) -> str:
    """Render the hierarchy and triples as a compact OWL document."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<rdf:RDF xmlns:rdf="%s" xmlns:rdfs="%s" xmlns:owl="%s">' % (RDF_NS, RDFS_NS, OWL_NS),
    ]
    parents = {child: parent for child, parent in hierarchy.edges()}
    for node in sorted(hierarchy.concept_nodes(), key=lambda n: n.concept):
        name = escape(names[node.concept], {'"': "&quot;"})
        parent_id = parents.get(node.concept)
        if parent_id is None:
            lines.append(f' <Class rdf:ID="{name}" />')
        else:
            parent_name = escape(names[parent_id], {'"': "&quot;"})
            lines.append(f' <Class rdf:ID="{name}">')
            lines.append(f'  <rdfs:subClassOf rdf:resource="{parent_name}" />')
            lines.append(" </Class>")
    if kb is not None:
        in_hierarchy = {n.concept for n in hierarchy.concept_nodes()}
        for t in sorted(kb.triples, key=lambda t: (t.concept_id, t.property, t.feedback)):
            if t.concept_id not in in_hierarchy:
                continue
            name = escape(names[t.concept_id], {'"': "&quot;"})
            lines.append(f' <owl:ObjectProperty owl:name="{escape(t.property)}">')
            lines.append(f'  <owl:domain owl:class="{name}" />')
            lines.append(f"  <feedback>{escape(t.feedback)}</feedback>")
            lines.append(" </owl:ObjectProperty>")
    lines.append("</rdf:RDF>")
    return "\n".join(lines) + "\n"


def parse_owl(text: str) -> dict:
    """Inverse view of export_owl for verification: class names, subclass
    edges, and (concept, property, feedback) triples."""
    root = ET.fromstring(text)
    classes: list[str] = []
    edges: list[tuple[str, str]] = []
    triples: list[tuple[str, str, str]] = []
    for el in root:
        if el.tag == "Class":
            name = el.attrib[f"{{{RDF_NS}}}ID"]
            classes.append(name)
            for sub in el.findall(f"{{{RDFS_NS}}}subClassOf"):
                edges.append((name, sub.attrib[f"{{{RDF_NS}}}resource"]))
        elif el.tag == f"{{{OWL_NS}}}ObjectProperty":
            prop = el.attrib[f"{{{OWL_NS}}}name"]
            domain = el.find(f"{{{OWL_NS}}}domain")
            feedback = el.find("feedback")
            triples.append(
                (
                    domain.attrib[f"{{{OWL_NS}}}class"] if domain is not None else "",
                    prop,
                    feedback.text if feedback is not None and feedback.text else "",
                )
            )
    return {"classes": classes, "edges": edges, "triples": triples}
