// Integration against the real Python service: builds the bundled toy
// artifacts into a temp dir, starts the server as a child process, and
// checks the contract the page relies on. Needs the ontoforge package
// installed (pip install -e ..) and the bundle built (npm run build).

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { existsSync, mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import type { HierarchyNode } from "../src/api.js";
import { RequestRejected, ask, fetchHierarchy } from "../src/api.js";

const REPO_ROOT = fileURLToPath(new URL("../..", import.meta.url));
const TOY_CONFIG = join(REPO_ROOT, "src", "ontoforge", "data", "toy", "toy.json");
const DIST = fileURLToPath(new URL("../dist", import.meta.url));

const DBMS_DEFINITION =
    "is a computer software application that interacts with the user, " +
    "other applications, and the database itself to capture and analyze data.";

let server: ChildProcess | null = null;
let artifacts = "";
let base = "";

async function waitForHealth(timeoutMs: number): Promise<void> {
    const deadline = Date.now() + timeoutMs;
    while (Date.now() < deadline) {
        if (server && server.exitCode !== null) {
            throw new Error(`server exited early with code ${server.exitCode}`);
        }
        try {
            const response = await fetch(`${base}/health`);
            if (response.ok) {
                return;
            }
        } catch {
            // not listening yet
        }
        await new Promise(resolve => setTimeout(resolve, 150));
    }
    throw new Error("server did not come up in time");
}

beforeAll(async () => {
    if (!existsSync(join(DIST, "index.html"))) {
        throw new Error("dist/index.html missing; run `npm run build` first");
    }
    artifacts = mkdtempSync(join(tmpdir(), "ontoforge-ui-"));
    const build = spawnSync(
        "python3",
        ["-m", "ontoforge", "all", "--config", TOY_CONFIG, "--output-dir", artifacts],
        { encoding: "utf8" }
    );
    if (build.status !== 0) {
        throw new Error(`pipeline failed:\n${build.stdout}\n${build.stderr}`);
    }

    const port = 20000 + Math.floor(Math.random() * 20000);
    base = `http://127.0.0.1:${port}`;
    server = spawn(
        "python3",
        [
            "-m", "ontoforge", "serve",
            "--config", TOY_CONFIG,
            "--output-dir", artifacts,
            "--host", "127.0.0.1",
            "--port", String(port),
            "--ui", DIST
        ],
        { stdio: ["ignore", "ignore", "pipe"] }
    );
    await waitForHealth(30_000);
}, 120_000);

afterAll(() => {
    server?.kill();
    if (artifacts) {
        rmSync(artifacts, { recursive: true, force: true });
    }
});

describe("service contract", () => {
    it("answers a definition question with the stored feedback, byte for byte", async () => {
        const response = await ask("define dbms", base);
        expect(response.status).toBe("answered");
        expect(response.items).toHaveLength(1);
        expect(response.items[0]).toEqual({
            concept: "dbms",
            property: "definition",
            feedback: DBMS_DEFINITION
        });
    });

    it("returns no_answer with no items for unknown subjects", async () => {
        const response = await ask("what is polymorphism", base);
        expect(response).toEqual({ status: "no_answer", items: [] });
    });

    it("rejects a blank question with a detail the page shows inline", async () => {
        let caught: unknown = null;
        try {
            await ask("", base);
        } catch (err) {
            caught = err;
        }
        expect(caught).toBeInstanceOf(RequestRejected);
        expect((caught as RequestRejected).status).toBe(400);
        expect((caught as RequestRejected).message).toBe(
            "field 'question' must be a non-empty string"
        );
    });

    it("flags a malformed body as a 400 without falling over", async () => {
        const response = await fetch(`${base}/ask`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: "{not json"
        });
        expect(response.status).toBe(400);
        expect(await response.json()).toEqual({ detail: "malformed request body" });
    });

    it("exposes the hierarchy under a synthetic root that includes dbms", async () => {
        const root = await fetchHierarchy(base);
        expect(root.concept).toBeNull();
        expect(root.name).toBeNull();
        expect(root.children.length).toBeGreaterThan(0);

        const names: string[] = [];
        const walk = (node: HierarchyNode) => {
            if (node.name !== null) {
                names.push(node.name);
            }
            node.children.forEach(walk);
        };
        walk(root);
        expect(names).toContain("dbms");
    });

    it("serves the built page at the root while API routes win", async () => {
        const page = await fetch(`${base}/`);
        expect(page.status).toBe(200);
        expect(await page.text()).toContain('<div id="tree"');

        const health = await fetch(`${base}/health`);
        expect(await health.json()).toEqual({ status: "ok" });
    });
});
