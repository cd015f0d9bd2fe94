// Thin client for the question answering service. Responses come back as
// parsed JSON; an HTTP 4xx becomes RequestRejected so callers can tell a
// bad request apart from an unreachable server.

export interface AnswerItem {
    concept: string;
    property: string;
    feedback: string;
}

export interface AskResponse {
    status: "answered" | "no_answer";
    items: AnswerItem[];
}

export interface HierarchyNode {
    concept: number | null;
    name: string | null;
    count: number;
    children: HierarchyNode[];
}

export class RequestRejected extends Error {
    readonly status: number;

    constructor(status: number, detail: string) {
        super(detail);
        this.status = status;
    }
}

async function rejectionDetail(response: Response): Promise<string> {
    try {
        const body = await response.json();
        if (body && typeof body.detail === "string") {
            return body.detail;
        }
    } catch {
        // non-JSON error body, fall through to the generic message
    }
    return `request failed with status ${response.status}`;
}

export async function ask(question: string, base = ""): Promise<AskResponse> {
    const response = await fetch(`${base}/ask`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ question })
    });
    if (!response.ok) {
        throw new RequestRejected(response.status, await rejectionDetail(response));
    }
    return (await response.json()) as AskResponse;
}

export async function fetchHierarchy(base = ""): Promise<HierarchyNode> {
    const response = await fetch(`${base}/hierarchy`);
    if (!response.ok) {
        throw new RequestRejected(response.status, await rejectionDetail(response));
    }
    return (await response.json()) as HierarchyNode;
}
