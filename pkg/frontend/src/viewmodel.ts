import { SessionClient } from "./api.js";
import { layoutDiagram, Point } from "./layout.js";
import {
  ApiError,
  MatrixDoc,
  RelationDoc,
  Snapshot,
  TreeNode,
} from "./types.js";

export interface RenderNode {
  id: number;
  x: number;
  y: number;
  label: string;
}

export interface RenderEdge {
  tail: number;
  head: number;
  weight: number;
  label: string | null; // weight-1 edges carry no label
}

export interface RenderCycle {
  vertices: number[];
  badge: string; // "m=2", "m=3", ... or the infinity certificate
  x: number;
  verified: string;
}

export interface RenderHistoryNode {
  node: number;
  parent: number | null;
  vertex: number | null;
  eps: number | null;
  current: boolean;
}

export interface RenderModel {
  nodes: RenderNode[];
  edges: RenderEdge[];
  cycles: RenderCycle[];
  relations: RelationDoc[];
  history: RenderHistoryNode[];
  warnings: string[];
  epsilon: number;
  acyclic: boolean;
  allWeightsGe4: boolean;
}

function cycleVertices(rel: RelationDoc): number[] {
  // a cycle word reads v0 v1 ... v_{d-1} v_{d-2} ... v1: the first
  // (len + 2) / 2 letters are the directed cycle order
  const d = (rel.word.length + 2) / 2;
  return rel.word.slice(0, d).map(Math.abs);
}

function badgeFor(rel: RelationDoc): string {
  return rel.m === "inf" ? `∞ (x=${rel.x})` : `m=${rel.m}`;
}

// Mirrors the server state exactly; all algebraic data in the render
// model is copied verbatim from server snapshots.
export class ExplorerModel {
  epsilon: number = -1; // matches the CLI default
  private snapshots = new Map<number, Snapshot>();
  private tree: TreeNode[] = [];
  private cursor = 0;
  private warnings: string[] = [];
  private id = "";

  constructor(private client: SessionClient) {}

  get sessionId(): string {
    return this.id;
  }

  get cursorNode(): number {
    return this.cursor;
  }

  get currentSnapshot(): Snapshot {
    const snap = this.snapshots.get(this.cursor);
    if (!snap) {
      throw new Error(`no snapshot for node ${this.cursor}`);
    }
    return snap;
  }

  async start(matrix: MatrixDoc): Promise<void> {
    const res = await this.client.createSession(matrix);
    this.id = res.id;
    this.warnings = res.warnings;
    this.snapshots.clear();
    this.snapshots.set(res.root.node, res.root);
    this.tree = [{ node: res.root.node, parent: null, vertex: null, eps: null }];
    this.cursor = res.root.node;
  }

  setEpsilon(eps: number): void {
    if (eps !== 1 && eps !== -1) {
      throw new Error("epsilon must be +1 or -1");
    }
    this.epsilon = eps;
  }

  // Clicking a vertex mutates there.  The request is conditional on the
  // cursor; a 409 (someone else moved it) resolves by refetching state.
  async clickVertex(vertex: number): Promise<void> {
    const parent = this.cursor;
    try {
      const snap = await this.client.mutate(this.id, vertex, this.epsilon, parent);
      this.snapshots.set(snap.node, snap);
      this.tree.push({ node: snap.node, parent, vertex, eps: this.epsilon });
      this.cursor = snap.node;
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        await this.refetch();
        return;
      }
      throw err;
    }
  }

  // Selecting a history node moves the cursor; the server snapshot is
  // authoritative even though node snapshots never change.
  async selectNode(node: number): Promise<void> {
    const snap = await this.client.moveCursor(this.id, node);
    this.snapshots.set(snap.node, snap);
    this.cursor = snap.node;
  }

  async refetch(): Promise<void> {
    const state = await this.client.getState(this.id);
    this.cursor = state.cursor;
    this.tree = state.tree;
    this.warnings = state.warnings;
    this.snapshots.set(state.snapshot.node, state.snapshot);
  }

  renderModel(): RenderModel {
    const snap = this.currentSnapshot;
    const positions: Map<number, Point> = layoutDiagram(snap.diagram);
    const nodes: RenderNode[] = [];
    for (let v = 1; v <= snap.diagram.n; v++) {
      const p = positions.get(v)!;
      nodes.push({ id: v, x: p.x, y: p.y, label: String(v) });
    }
    const edges: RenderEdge[] = snap.diagram.edges.map((e) => ({
      tail: e.tail,
      head: e.head,
      weight: e.weight,
      label: e.weight >= 2 ? String(e.weight) : null,
    }));
    const cycles: RenderCycle[] = snap.relations
      .filter((r) => r.kind === "cycle")
      .map((r) => ({
        vertices: cycleVertices(r),
        badge: badgeFor(r),
        x: r.x,
        verified: r.verified,
      }));
    return {
      nodes,
      edges,
      cycles,
      relations: snap.relations,
      history: this.tree.map((t) => ({ ...t, current: t.node === this.cursor })),
      warnings: this.warnings,
      epsilon: this.epsilon,
      acyclic: snap.acyclic,
      allWeightsGe4: snap.all_weights_ge4,
    };
  }
}
