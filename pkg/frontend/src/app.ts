// Controller: wires the query box, ranking toggles, term cloud and facet
// panels to the service client. State transitions run one at a time and every
// interaction re-issues the search (cancelling any stale round-trip).

import { ApiClient } from './api.js';
import {
  SessionState,
  buildRequest,
  initialState,
  withAuthorFilter,
  withError,
  withJournalFilter,
  withQuery,
  withResponse,
  withSelectedTerm,
  withToggle,
  withoutSelectedTerm,
} from './state.js';
import {
  Handlers,
  renderAuthorPanel,
  renderError,
  renderJournalPanel,
  renderResults,
  renderTermCloud,
} from './render.js';
import type { CentralityResponse, RecommendationItem, ZonesResponse } from './types.js';

export interface AppElements {
  form: HTMLFormElement;
  queryInput: HTMLInputElement;
  toggles: { str: HTMLInputElement; brad: HTMLInputElement; auth: HTMLInputElement; combined: HTMLInputElement };
  error: HTMLElement;
  results: HTMLElement;
  termCloud: HTMLElement;
  journals: HTMLElement;
  authors: HTMLElement;
  chainLabel: HTMLElement;
}

export class App {
  state: SessionState = initialState();
  private recommendations: RecommendationItem[] = [];
  private zones: ZonesResponse | null = null;
  private centrality: CentralityResponse | null = null;
  private transition: Promise<void> = Promise.resolve();

  constructor(
    private readonly api: ApiClient,
    private readonly elements: AppElements,
  ) {
    elements.form.addEventListener('submit', (event) => {
      event.preventDefault();
      this.apply((state) => withQuery(state, elements.queryInput.value.trim()));
    });
    for (const name of ['str', 'brad', 'auth', 'combined'] as const) {
      elements.toggles[name].addEventListener('change', () => {
        this.apply((state) => withToggle(state, name));
      });
    }
  }

  /** Serialize state transitions; each one triggers a fresh search. */
  apply(transition: (state: SessionState) => SessionState): Promise<void> {
    this.transition = this.transition.then(() => {
      this.state = transition(this.state);
      return this.refresh();
    });
    return this.transition;
  }

  /** Wait until all queued transitions (and their searches) settle. */
  idle(): Promise<void> {
    return this.transition;
  }

  private handlers(): Handlers {
    return {
      onTermClick: (term) => {
        void this.apply((state) =>
          state.selectedTerms.includes(term)
            ? withoutSelectedTerm(state, term)
            : withSelectedTerm(state, term),
        );
      },
      onJournalClick: (journalKey) => {
        void this.apply((state) => withJournalFilter(state, journalKey));
      },
      onAuthorClick: (author) => {
        void this.apply((state) => withAuthorFilter(state, author));
      },
    };
  }

  private async refresh(): Promise<void> {
    if (!this.state.query) {
      this.render();
      return;
    }
    const request = buildRequest(this.state);
    try {
      const bundle = await this.api.searchBundle(request);
      this.state = withResponse(this.state, bundle.search);
      this.recommendations = bundle.recommendations.recommendations;
      this.zones = bundle.zones;
      this.centrality = bundle.centrality;
    } catch (err) {
      if ((err as Error).name === 'AbortError') return; // superseded by a newer search
      this.state = withError(this.state, (err as Error).message);
    }
    this.render();
  }

  private render(): void {
    const handlers = this.handlers();
    renderError(this.elements.error, this.state.error);
    renderResults(this.elements.results, this.state.lastResponse);
    renderTermCloud(this.elements.termCloud, this.recommendations, this.state.selectedTerms, handlers);
    renderJournalPanel(this.elements.journals, this.zones, handlers);
    renderAuthorPanel(this.elements.authors, this.centrality, handlers);
    this.elements.chainLabel.textContent = this.state.chainSteps.length
      ? `chain: ${this.state.chainSteps.join(' → ')}`
      : '';
  }
}

export function findElements(root: Document | HTMLElement): AppElements {
  const get = <T extends HTMLElement>(id: string): T => {
    const node = root.querySelector<T>(`#${id}`);
    if (!node) throw new Error(`missing element #${id}`);
    return node;
  };
  return {
    form: get<HTMLFormElement>('search-form'),
    queryInput: get<HTMLInputElement>('query-input'),
    toggles: {
      str: get<HTMLInputElement>('toggle-str'),
      brad: get<HTMLInputElement>('toggle-brad'),
      auth: get<HTMLInputElement>('toggle-auth'),
      combined: get<HTMLInputElement>('toggle-combined'),
    },
    error: get('error-area'),
    results: get('results-area'),
    termCloud: get('term-cloud'),
    journals: get('journal-panel'),
    authors: get('author-panel'),
    chainLabel: get('chain-label'),
  };
}

export function mount(baseUrl = ''): App {
  return new App(new ApiClient(baseUrl), findElements(document));
}
