// View state for the ask panel, kept as plain values with pure transitions
// so the submit/pending/error rules are testable without a browser. The DOM
// layer only ever renders the latest state.

import type { AskResponse } from "./api.js";

export interface LogEntry {
    question: string;
    response: AskResponse;
}

export interface AskViewState {
    input: string;
    pending: boolean;
    log: LogEntry[];
    // transport failure; the typed question is kept so it can be retried
    error: string | null;
    // the server rejected the question itself (HTTP 4xx detail)
    invalid: string | null;
}

export function initialState(): AskViewState {
    return { input: "", pending: false, log: [], error: null, invalid: null };
}

export function canSubmit(state: AskViewState): boolean {
    return !state.pending && state.input.trim().length > 0;
}

export function editInput(state: AskViewState, text: string): AskViewState {
    return { ...state, input: text, invalid: null };
}

export function submitStarted(state: AskViewState): AskViewState {
    return { ...state, pending: true, error: null, invalid: null };
}

export function answerReceived(
    state: AskViewState,
    question: string,
    response: AskResponse
): AskViewState {
    return {
        ...state,
        pending: false,
        input: "",
        log: [...state.log, { question, response }]
    };
}

export function requestFailed(state: AskViewState, message: string): AskViewState {
    // log and input stay exactly as they were
    return { ...state, pending: false, error: message };
}

export function requestRejected(state: AskViewState, message: string): AskViewState {
    return { ...state, pending: false, invalid: message };
}
