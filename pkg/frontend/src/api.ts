/** Typed client for the /v1 JSON API; the only gateway to the backend. */

import { z } from "zod";

export const SignatureDoc = z.object({
  d: z.number().int(),
  labels: z.array(z.array(z.number().int())),
  values: z.array(z.number()),
});
export type SignatureDoc = z.infer<typeof SignatureDoc>;

export const BoundsDoc = z.object({
  targets: z.array(z.array(z.number().int())),
  lower: z.array(z.number()),
  upper: z.array(z.number()),
});
export type BoundsDoc = z.infer<typeof BoundsDoc>;

export const ConstraintDoc = z.object({
  label: z.array(z.number().int()),
  value: z.number(),
  provenance: z.string(),
});

export const SessionDoc = z.object({
  session_id: z.string(),
  d: z.number().int(),
  constraints: z.array(ConstraintDoc),
  created: z.string(),
  updated: z.string(),
  feasible: z.boolean(),
  phase1_objective: z.number(),
  witness: z.array(z.number()).nullable(),
  bounds: BoundsDoc.nullable(),
  signature: SignatureDoc,
});
export type SessionDoc = z.infer<typeof SessionDoc>;

export const PolytopeDoc = z.object({
  d: z.number().int(),
  rank: z.number().int(),
  vertices: z.array(z.array(z.number())),
  projection: z.array(z.array(z.number())).optional(),
  targets: z.array(z.array(z.number().int())).optional(),
});
export type PolytopeDoc = z.infer<typeof PolytopeDoc>;

export const ApiErrorDoc = z.object({
  code: z.string(),
  message: z.string(),
  detail: z.unknown().nullable(),
});
export type ApiErrorDoc = z.infer<typeof ApiErrorDoc>;

export const RejectionDetail = z.object({
  lower: z.number().nullable(),
  upper: z.number().nullable(),
});

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: ApiErrorDoc,
  ) {
    super(payload.message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(schema: z.ZodType<T>, path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, ApiErrorDoc.parse(body));
    }
    return schema.parse(body);
  }

  createSession(d: number, constraints: Array<{ label: number[]; value: number; provenance?: string }>) {
    return this.request(SessionDoc, "/v1/sessions", {
      method: "POST",
      body: JSON.stringify({ d, constraints }),
    });
  }

  getSession(id: string) {
    return this.request(SessionDoc, `/v1/sessions/${id}`);
  }

  /** Submit a constraint in tau units; the server converts and re-validates. */
  fixTau(id: string, label: number[], tau: number) {
    return this.request(SessionDoc, `/v1/sessions/${id}/constraints`, {
      method: "POST",
      body: JSON.stringify({ label, tau }),
    });
  }

  clearConstraint(id: string, label: number[]) {
    return this.request(SessionDoc, `/v1/sessions/${id}/constraints/${label.join(",")}`, {
      method: "DELETE",
    });
  }

  /** Vertex cloud of the current polytope, projected onto target labels. */
  vertices(signature: SignatureDoc, targets: number[][]) {
    return this.request(PolytopeDoc, "/v1/vertices", {
      method: "POST",
      body: JSON.stringify({ ...signature, targets }),
    });
  }
}
