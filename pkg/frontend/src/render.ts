// DOM builders for the conversation log and the concept tree. Feedback text
// is always assigned through textContent so an answer reaches the page byte
// for byte, exactly as the service returned it.

import type { AnswerItem, HierarchyNode } from "./api.js";
import type { LogEntry } from "./state.js";

export const NO_ANSWER_TEXT = "no answer";

function el(tag: string, className?: string, text?: string): HTMLElement {
    const node = document.createElement(tag);
    if (className) {
        node.className = className;
    }
    if (text !== undefined) {
        node.textContent = text;
    }
    return node;
}

function button(className: string, text: string, onClick: () => void): HTMLButtonElement {
    const node = el("button", className, text) as HTMLButtonElement;
    node.type = "button";
    node.addEventListener("click", onClick);
    return node;
}

function answerCard(item: AnswerItem): HTMLElement {
    const card = el("div", "card");
    const head = el("div", "card-head");
    head.appendChild(el("span", "card-concept", item.concept));
    head.appendChild(el("span", "card-property", item.property));
    card.appendChild(head);
    card.appendChild(el("p", "card-feedback", item.feedback));
    return card;
}

export function renderLogEntry(entry: LogEntry): HTMLElement {
    const wrap = el("div", "entry");
    wrap.appendChild(el("p", "entry-question", entry.question));
    const answer = el("div", "entry-answer");
    if (entry.response.status === "answered" && entry.response.items.length > 0) {
        for (const item of entry.response.items) {
            answer.appendChild(answerCard(item));
        }
    } else {
        answer.appendChild(el("p", "no-answer", NO_ANSWER_TEXT));
    }
    wrap.appendChild(answer);
    return wrap;
}

// The payload root is synthetic (concept null), so its children become the
// top level of the rendered tree.
export function renderTree(root: HierarchyNode, onSelect: (name: string) => void): HTMLElement {
    const list = el("ul", "tree");
    for (const child of root.children) {
        list.appendChild(treeNode(child, onSelect));
    }
    return list;
}

function treeNode(node: HierarchyNode, onSelect: (name: string) => void): HTMLElement {
    const item = el("li", "tree-node");
    const row = el("div", "tree-row");
    const name = node.name ?? `concept ${node.concept}`;

    if (node.children.length > 0) {
        // child rows are built on first expand only
        let expanded = false;
        let childList: HTMLElement | null = null;
        const toggle = button("tree-toggle", "+", () => {
            if (childList === null) {
                childList = el("ul", "tree-children");
                for (const child of node.children) {
                    childList.appendChild(treeNode(child, onSelect));
                }
                item.appendChild(childList);
            }
            expanded = !expanded;
            childList.hidden = !expanded;
            toggle.textContent = expanded ? "-" : "+";
        });
        row.appendChild(toggle);
    } else {
        row.appendChild(el("span", "tree-toggle tree-leaf"));
    }

    const label = button("tree-name", name, () => onSelect(name));
    if (node.concept !== null) {
        label.dataset.concept = String(node.concept);
    }
    row.appendChild(label);
    row.appendChild(el("span", "tree-count", String(node.count)));
    item.appendChild(row);
    return item;
}

export function renderTreeError(message: string, onRetry: () => void): HTMLElement {
    const wrap = el("div", "tree-error");
    wrap.appendChild(el("p", undefined, message));
    wrap.appendChild(button("retry", "retry", onRetry));
    return wrap;
}

export function renderTreeEmpty(): HTMLElement {
    return el("p", "tree-empty", "no concepts to show yet");
}
