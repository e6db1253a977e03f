// DOM rendering. Scores and orderings come verbatim from service responses;
// nothing here recomputes or reorders ranking output.

import type {
  CentralityResponse,
  RecommendationItem,
  SearchResponse,
  ZonesResponse,
} from './types.js';

export interface Handlers {
  onTermClick(term: string): void;
  onJournalClick(journalKey: string): void;
  onAuthorClick(author: string): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderError(container: HTMLElement, message: string | null): void {
  container.innerHTML = '';
  if (!message) return;
  const banner = el('div', 'error-banner', message);
  banner.setAttribute('role', 'alert');
  container.appendChild(banner);
}

export function renderTermCloud(
  container: HTMLElement,
  recommendations: RecommendationItem[],
  selected: string[],
  handlers: Handlers,
): void {
  container.innerHTML = '';
  if (!recommendations.length) {
    container.appendChild(el('p', 'empty-state', 'no recommended terms for this query'));
    return;
  }
  const maxStrength = recommendations[0].strength || 1;
  for (const rec of recommendations) {
    const button = el('button', 'term', rec.term);
    button.type = 'button';
    // size by relative strength: 0.8em for the weakest up to 1.6em for the top term
    const scale = 0.8 + 0.8 * (rec.strength / maxStrength);
    button.style.fontSize = `${scale.toFixed(2)}em`;
    button.dataset.term = rec.term;
    button.dataset.strength = String(rec.strength);
    if (rec.low_confidence) button.classList.add('low-confidence');
    if (selected.includes(rec.term)) button.classList.add('selected');
    button.addEventListener('click', () => handlers.onTermClick(rec.term));
    container.appendChild(button);
  }
}

export function renderResults(container: HTMLElement, response: SearchResponse | null): void {
  container.innerHTML = '';
  if (!response) return;
  const header = el('div', 'results-header');
  header.appendChild(el('span', 'ranking-label', response.ranking_label));
  header.appendChild(
    el('span', 'result-count', `${response.total} documents (showing ${response.entries.length})`),
  );
  if (response.expansion_terms.length) {
    header.appendChild(
      el('span', 'expansion-note', `expanded with: ${response.expansion_terms.join(', ')}`),
    );
  }
  container.appendChild(header);

  if (response.discarded && response.discarded.total > 0) {
    const d = response.discarded;
    container.appendChild(
      el(
        'div',
        'discard-note',
        `${d.total} documents discarded by zero factors ` +
          `(no journal weight: ${d.zero_journal}, no author weight: ${d.zero_author})`,
      ),
    );
  }

  if (!response.entries.length) {
    container.appendChild(el('p', 'empty-state', 'no documents'));
    return;
  }

  const list = el('ol', 'results');
  for (const entry of response.entries) {
    const item = el('li', 'result');
    item.dataset.docId = entry.doc_id;
    item.dataset.journal = entry.journal ?? '';
    item.appendChild(el('span', 'title', entry.title));
    item.appendChild(el('span', 'doc-id', entry.doc_id));
    item.appendChild(el('span', 'score', entry.score.toFixed(6)));
    if (entry.journal) item.appendChild(el('span', 'journal', entry.journal));
    if (entry.authors.length) item.appendChild(el('span', 'authors', entry.authors.join('; ')));
    if (response.ranking_label === 'COMBINED' && entry.factors) {
      const f = entry.factors;
      const breakdown = el('span', 'factors');
      breakdown.dataset.tfidfNorm = String(f.tfidf_norm);
      breakdown.dataset.journalWeight = String(f.journal_weight);
      breakdown.dataset.authorWeight = String(f.author_weight);
      breakdown.textContent =
        `tfidf ${f.tfidf_norm.toFixed(4)} × journal ${f.journal_weight.toFixed(4)} ` +
        `× author ${f.author_weight.toFixed(4)}`;
      item.appendChild(breakdown);
    }
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function renderJournalPanel(
  container: HTMLElement,
  zones: ZonesResponse | null,
  handlers: Handlers,
): void {
  container.innerHTML = '';
  container.appendChild(el('h3', undefined, 'journals'));
  if (!zones || (!zones.core.length && !zones.zone2.length && !zones.zone3.length)) {
    container.appendChild(el('p', 'empty-state', 'no journals in this result set'));
    return;
  }
  for (const [zoneName, rows] of [
    ['core', zones.core],
    ['zone2', zones.zone2],
    ['zone3', zones.zone3],
  ] as const) {
    if (!rows.length) continue;
    container.appendChild(el('h4', 'zone-name', zoneName));
    const list = el('ul', 'journal-list');
    for (const row of rows) {
      const item = el('li');
      const button = el('button', 'journal-facet', `${row.journal} (${row.count})`);
      button.type = 'button';
      button.dataset.journal = row.journal;
      button.addEventListener('click', () => handlers.onJournalClick(row.journal));
      item.appendChild(button);
      list.appendChild(item);
    }
    container.appendChild(list);
  }
}

export function renderAuthorPanel(
  container: HTMLElement,
  centrality: CentralityResponse | null,
  handlers: Handlers,
  limit = 15,
): void {
  container.innerHTML = '';
  container.appendChild(el('h3', undefined, 'central authors'));
  if (!centrality || !centrality.authors.length) {
    container.appendChild(el('p', 'empty-state', 'no authors in this result set'));
    return;
  }
  const list = el('ul', 'author-list');
  for (const row of centrality.authors.slice(0, limit)) {
    const item = el('li');
    const button = el('button', 'author-facet', `${row.author} (${row.betweenness.toFixed(2)})`);
    button.type = 'button';
    button.dataset.author = row.author;
    button.addEventListener('click', () => handlers.onAuthorClick(row.author));
    item.appendChild(button);
    list.appendChild(item);
  }
  container.appendChild(list);
}
