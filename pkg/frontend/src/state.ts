// Session state and its transitions. Pure functions so every click maps to a
// deterministic next state and request; the controller serializes them.

import type { SearchRequest, SearchResponse } from './types.js';

export interface Toggles {
  str: boolean;
  brad: boolean;
  auth: boolean;
  combined: boolean;
}

export interface SessionState {
  query: string;
  toggles: Toggles;
  selectedTerms: string[]; // clicked in the cloud or typed by hand
  chainSteps: string[]; // appended by facet clicks, e.g. "brad:j=1001-2001"
  k: number;
  expandK: number; // auto-expansion size when the STR toggle is on
  lastResponse: SearchResponse | null;
  error: string | null;
}

export const DEFAULT_EXPAND_K = 4;

export function initialState(): SessionState {
  return {
    query: '',
    toggles: { str: false, brad: false, auth: false, combined: false },
    selectedTerms: [],
    chainSteps: [],
    k: 10,
    expandK: DEFAULT_EXPAND_K,
    lastResponse: null,
    error: null,
  };
}

const STEP_PATTERN = /^(str:\d+|brad:core|brad:[1-9]\d*|brad:j=.+|auth:[1-9]\d*|auth:a=.+)$/;

/** Syntactic twin of the server-side chain grammar. */
export function isValidStep(step: string): boolean {
  return STEP_PATTERN.test(step);
}

export function chainSpec(steps: string[]): string {
  return steps.join(',');
}

/** Steps implied by the active toggles, used to seed a facet-click chain. */
export function toggleSteps(state: SessionState): string[] {
  const steps: string[] = [];
  if (state.toggles.str) steps.push(`str:${state.expandK}`);
  if (state.toggles.brad) steps.push('brad:core');
  if (state.toggles.auth) steps.push('auth:1');
  return steps;
}

/** Translate the session into the one request the service understands. */
export function buildRequest(state: SessionState): SearchRequest {
  const base: SearchRequest = { query: state.query, ranking: 'tfidf', k: state.k };
  if (state.selectedTerms.length) base.expansion_terms = [...state.selectedTerms];

  if (state.chainSteps.length) {
    const steps = state.chainSteps.filter(isValidStep);
    return { ...base, ranking: 'chain', chain: chainSpec(steps) };
  }
  if (state.toggles.combined) {
    return { ...base, ranking: 'combined', expand: state.toggles.str ? state.expandK : 0 };
  }
  const filters = [state.toggles.brad, state.toggles.auth].filter(Boolean).length;
  if (filters >= 2) {
    return { ...base, ranking: 'chain', chain: chainSpec(toggleSteps(state)) };
  }
  if (state.toggles.brad) {
    return { ...base, ranking: 'brad', expand: state.toggles.str ? state.expandK : 0 };
  }
  if (state.toggles.auth) {
    return { ...base, ranking: 'auth', expand: state.toggles.str ? state.expandK : 0 };
  }
  if (state.toggles.str) {
    return { ...base, ranking: 'tfidf', expand: state.expandK };
  }
  return base;
}

export function withQuery(state: SessionState, query: string): SessionState {
  // a fresh query drops query-bound refinements
  return { ...state, query, selectedTerms: [], chainSteps: [], error: null };
}

export function withToggle(state: SessionState, name: keyof Toggles): SessionState {
  const toggles = { ...state.toggles, [name]: !state.toggles[name] };
  if (name === 'combined' && toggles.combined) {
    toggles.brad = false;
    toggles.auth = false;
  }
  if ((name === 'brad' || name === 'auth') && toggles[name]) {
    toggles.combined = false;
  }
  return { ...state, toggles, chainSteps: [] };
}

export function withSelectedTerm(state: SessionState, term: string): SessionState {
  if (state.selectedTerms.includes(term)) return state;
  return { ...state, selectedTerms: [...state.selectedTerms, term] };
}

export function withoutSelectedTerm(state: SessionState, term: string): SessionState {
  return { ...state, selectedTerms: state.selectedTerms.filter((t) => t !== term) };
}

export function withJournalFilter(state: SessionState, journalKey: string): SessionState {
  const seed = state.chainSteps.length ? state.chainSteps : toggleSteps(state);
  return { ...state, chainSteps: [...seed, `brad:j=${journalKey}`] };
}

export function withAuthorFilter(state: SessionState, author: string): SessionState {
  const seed = state.chainSteps.length ? state.chainSteps : toggleSteps(state);
  return { ...state, chainSteps: [...seed, `auth:a=${author}`] };
}

export function withResponse(state: SessionState, response: SearchResponse): SessionState {
  return { ...state, lastResponse: response, error: null };
}

export function withError(state: SessionState, message: string): SessionState {
  // results and refinements survive a failed round-trip
  return { ...state, error: message };
}
