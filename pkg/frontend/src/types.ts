// Wire types mirroring the session-service JSON documents.  The client
// never computes algebra: every number shown on screen comes from one
// of these documents.

export interface MatrixDoc {
  n: number;
  b: number[][];
  d?: number[];
}

export interface DiagramEdge {
  tail: number;
  head: number;
  weight: number;
}

export interface DiagramDoc {
  n: number;
  edges: DiagramEdge[];
}

export interface CompanionDoc {
  a: number[][];
  matrix: MatrixDoc;
}

export interface AdmissibilityDoc {
  admissible: boolean;
  witness: number[] | null;
}

export interface RelationDoc {
  kind: "pair" | "cycle" | "path-system" | "affine-dn";
  word: number[];
  x: number;
  m: number | "inf";
  verified: string;
}

export interface EdgeOrderDoc {
  i: number;
  j: number;
  m: number | "inf";
}

export interface Snapshot {
  node: number;
  matrix: MatrixDoc;
  diagram: DiagramDoc;
  companion: CompanionDoc | null;
  admissible: AdmissibilityDoc | null;
  basis: { vectors: number[][] } | null;
  edge_orders: EdgeOrderDoc[];
  relations: RelationDoc[];
  all_weights_ge4: boolean;
  acyclic: boolean;
}

export interface TreeNode {
  node: number;
  parent: number | null;
  vertex: number | null;
  eps: number | null;
}

export interface CreateResponse {
  id: string;
  root: Snapshot;
  warnings: string[];
}

export interface StateResponse {
  id: string;
  cursor: number;
  snapshot: Snapshot;
  tree: TreeNode[];
  warnings: string[];
}

export interface RelationsResponse {
  relations: RelationDoc[];
}

export interface ExportResponse {
  seed: MatrixDoc;
  nodes: TreeNode[];
  cursor: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public payload: unknown,
  ) {
    super(`session service returned ${status}`);
  }
}
