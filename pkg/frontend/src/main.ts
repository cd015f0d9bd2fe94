// Wires the page to the service. initApp is exported so tests can drive the
// whole page against a stubbed client; a real browser load falls through to
// the check at the bottom of the file.

import { ask, fetchHierarchy, RequestRejected } from "./api.js";
import type { AskResponse, HierarchyNode } from "./api.js";
import {
    AskViewState,
    answerReceived,
    canSubmit,
    editInput,
    initialState,
    requestFailed,
    requestRejected,
    submitStarted
} from "./state.js";
import { renderLogEntry, renderTree, renderTreeEmpty, renderTreeError } from "./render.js";

export interface ServiceClient {
    ask(question: string): Promise<AskResponse>;
    fetchHierarchy(): Promise<HierarchyNode>;
}

export const NETWORK_ERROR_TEXT = "could not reach the service";
export const TREE_ERROR_TEXT = "concepts are unavailable";

const liveClient: ServiceClient = {
    ask: question => ask(question),
    fetchHierarchy: () => fetchHierarchy()
};

export function initApp(client: ServiceClient = liveClient): void {
    const form = document.getElementById("ask-form") as HTMLFormElement;
    const input = document.getElementById("question") as HTMLInputElement;
    const submit = document.getElementById("submit") as HTMLButtonElement;
    const logBox = document.getElementById("log") as HTMLElement;
    const banner = document.getElementById("banner") as HTMLElement;
    const hint = document.getElementById("hint") as HTMLElement;
    const treeBox = document.getElementById("tree") as HTMLElement;

    let view: AskViewState = initialState();

    function sync(): void {
        submit.disabled = !canSubmit(view);
        hint.hidden = view.invalid === null;
        hint.textContent = view.invalid ?? "";
        banner.hidden = view.error === null;
        if (view.error !== null) {
            banner.replaceChildren();
            const message = document.createElement("span");
            message.textContent = view.error;
            const retry = document.createElement("button");
            retry.type = "button";
            retry.className = "retry";
            retry.textContent = "retry";
            retry.addEventListener("click", () => void submitQuestion());
            banner.append(message, retry);
        }
    }

    async function submitQuestion(): Promise<void> {
        // one request at a time; resubmits while pending are dropped
        if (!canSubmit(view)) {
            return;
        }
        const question = view.input.trim();
        view = submitStarted(view);
        sync();
        try {
            const response = await client.ask(question);
            view = answerReceived(view, question, response);
            logBox.appendChild(renderLogEntry({ question, response }));
            input.value = "";
            logBox.scrollTop = logBox.scrollHeight;
        } catch (err) {
            if (err instanceof RequestRejected) {
                view = requestRejected(view, err.message);
            } else {
                view = requestFailed(view, NETWORK_ERROR_TEXT);
            }
        }
        sync();
    }

    async function loadTree(): Promise<void> {
        try {
            const root = await client.fetchHierarchy();
            if (root.children.length === 0) {
                treeBox.replaceChildren(renderTreeEmpty());
            } else {
                treeBox.replaceChildren(
                    renderTree(root, name => {
                        input.value = `define ${name}`;
                        view = editInput(view, input.value);
                        sync();
                        input.focus();
                    })
                );
            }
        } catch {
            treeBox.replaceChildren(renderTreeError(TREE_ERROR_TEXT, () => void loadTree()));
        }
    }

    input.addEventListener("input", () => {
        view = editInput(view, input.value);
        sync();
    });
    form.addEventListener("submit", event => {
        event.preventDefault();
        void submitQuestion();
    });

    sync();
    void loadTree();
}

if (typeof document !== "undefined" && document.getElementById("ask-form") !== null) {
    initApp();
}
