// Wire types for the scirank HTTP API.

export type RankingMode = 'tfidf' | 'brad' | 'auth' | 'combined' | 'chain';

export interface SearchRequest {
  query: string;
  ranking: RankingMode;
  chain?: string;
  expand?: number;
  expansion_terms?: string[];
  k?: number;
}

export interface ResultFactors {
  tfidf_norm: number;
  journal_weight: number;
  author_weight: number;
}

export interface ResultEntry {
  rank: number;
  doc_id: string;
  score: number;
  title: string;
  journal: string | null;
  authors: string[];
  factors: ResultFactors | null;
}

export interface DiscardInfo {
  total: number;
  zero_journal: number;
  zero_author: number;
}

export interface SearchResponse {
  ranking_label: string;
  query: string;
  terms: string[];
  expansion_terms: string[];
  total: number;
  entries: ResultEntry[];
  discarded: DiscardInfo | null;
}

export interface RecommendationItem {
  term: string;
  strength: number;
  low_confidence: boolean;
}

export interface RecommendResponse {
  query: string;
  recommendations: RecommendationItem[];
}

export interface JournalCount {
  journal: string;
  count: number;
}

export interface ZonesResponse {
  query: string;
  core: JournalCount[];
  zone2: JournalCount[];
  zone3: JournalCount[];
  articles_per_zone: number[];
}

export interface AuthorCentrality {
  author: string;
  betweenness: number;
}

export interface CentralityResponse {
  query: string;
  authors: AuthorCentrality[];
  n_authors: number;
}
