// @vitest-environment jsdom

import { describe, expect, it, vi } from "vitest";

import type { HierarchyNode } from "../src/api.js";
import {
    NO_ANSWER_TEXT,
    renderLogEntry,
    renderTree,
    renderTreeEmpty,
    renderTreeError
} from "../src/render.js";

const TREE: HierarchyNode = {
    concept: null,
    name: null,
    count: 0,
    children: [
        {
            concept: 1,
            name: "database",
            count: 4,
            children: [{ concept: 2, name: "table", count: 3, children: [] }]
        },
        { concept: 3, name: "schema", count: 2, children: [] },
        { concept: 4, name: "view", count: 1, children: [] }
    ]
};

describe("renderLogEntry", () => {
    it("renders one card per answer item with the feedback byte for byte", () => {
        const feedback = 'keeps <b>rows & columns</b> "as-is"';
        const entry = renderLogEntry({
            question: "define table",
            response: {
                status: "answered",
                items: [
                    { concept: "table", property: "definition", feedback },
                    { concept: "table", property: "purpose", feedback: "holds records" }
                ]
            }
        });
        const cards = entry.querySelectorAll(".card");
        expect(cards).toHaveLength(2);
        expect(cards[0].querySelector(".card-concept")!.textContent).toBe("table");
        expect(cards[0].querySelector(".card-property")!.textContent).toBe("definition");
        expect(cards[0].querySelector(".card-feedback")!.textContent).toBe(feedback);
        expect(cards[1].querySelector(".card-property")!.textContent).toBe("purpose");
    });

    it("treats markup-looking feedback as text, never as elements", () => {
        const entry = renderLogEntry({
            question: "define table",
            response: {
                status: "answered",
                items: [{ concept: "table", property: "definition", feedback: "<img src=x>" }]
            }
        });
        expect(entry.querySelector("img")).toBeNull();
        expect(entry.querySelector(".card-feedback")!.textContent).toBe("<img src=x>");
    });

    it("shows the question line above the answer", () => {
        const entry = renderLogEntry({
            question: "define view",
            response: { status: "no_answer", items: [] }
        });
        expect(entry.querySelector(".entry-question")!.textContent).toBe("define view");
    });

    it("renders the no-answer message for a no_answer response", () => {
        const entry = renderLogEntry({
            question: "what is polymorphism",
            response: { status: "no_answer", items: [] }
        });
        expect(entry.querySelector(".card")).toBeNull();
        expect(entry.querySelector(".no-answer")!.textContent).toBe(NO_ANSWER_TEXT);
        expect(NO_ANSWER_TEXT).toBe("no answer");
    });
});

describe("renderTree", () => {
    it("renders one top-level node per child of the synthetic root", () => {
        const tree = renderTree(TREE, () => undefined);
        const names = Array.from(tree.querySelectorAll(":scope > li > .tree-row > .tree-name"));
        expect(names.map(node => node.textContent)).toEqual(["database", "schema", "view"]);
    });

    it("builds child rows lazily, on first expand", () => {
        const tree = renderTree(TREE, () => undefined);
        const first = tree.querySelector(".tree-node")!;
        expect(first.querySelector(".tree-children")).toBeNull();

        const toggle = first.querySelector(".tree-toggle") as HTMLButtonElement;
        toggle.click();
        const children = first.querySelector(".tree-children") as HTMLElement;
        expect(children.hidden).toBe(false);
        expect(children.querySelector(".tree-name")!.textContent).toBe("table");

        toggle.click();
        expect(children.hidden).toBe(true);
    });

    it("reports the clicked concept name through onSelect", () => {
        const onSelect = vi.fn();
        const tree = renderTree(TREE, onSelect);
        const rows = tree.querySelectorAll(":scope > li > .tree-row > .tree-name");
        (rows[1] as HTMLButtonElement).click();
        expect(onSelect).toHaveBeenCalledWith("schema");
    });

    it("shows the paragraph count next to each name", () => {
        const tree = renderTree(TREE, () => undefined);
        const counts = tree.querySelectorAll(":scope > li > .tree-row > .tree-count");
        expect(Array.from(counts).map(node => node.textContent)).toEqual(["4", "2", "1"]);
    });
});

describe("tree placeholders", () => {
    it("wires the retry callback on the error placeholder", () => {
        const onRetry = vi.fn();
        const placeholder = renderTreeError("concepts are unavailable", onRetry);
        expect(placeholder.querySelector("p")!.textContent).toBe("concepts are unavailable");
        (placeholder.querySelector(".retry") as HTMLButtonElement).click();
        expect(onRetry).toHaveBeenCalledTimes(1);
    });

    it("has an empty-state message", () => {
        expect(renderTreeEmpty().textContent).toBe("no concepts to show yet");
    });
});
