import { describe, expect, it } from "vitest";

import created from "../fixtures/session-created.json";
import afterFix from "../fixtures/session-after-fix.json";
import rejected from "../fixtures/constraint-rejected.json";
import vertices from "../fixtures/vertices-projection.json";

import { ApiError, Client, PolytopeDoc, SessionDoc } from "../src/api.js";

function mockFetch(routes: Record<string, { status: number; body: unknown }>) {
  const calls: Array<{ url: string; init?: RequestInit }> = [];
  const impl = async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    const key = `${init?.method ?? "GET"} ${url}`;
    const route = routes[key];
    if (!route) throw new Error(`unmocked ${key}`);
    return new Response(JSON.stringify(route.body), {
      status: route.status,
      headers: { "content-type": "application/json" },
    });
  };
  return { impl, calls };
}

describe("fixtures parse under the shared schemas", () => {
  it("session documents", () => {
    const doc = SessionDoc.parse(created);
    expect(doc.d).toBe(4);
    expect(doc.constraints).toHaveLength(3);
    expect(doc.bounds?.targets.length).toBeGreaterThan(0);
  });
  it("polytope documents", () => {
    const doc = PolytopeDoc.parse(vertices);
    expect(doc.vertices.length).toBeGreaterThan(2);
    expect(doc.projection).toBeDefined();
    expect(doc.projection![0]).toHaveLength(2);
  });
});

describe("Client", () => {
  it("creates sessions and fixes tau values", async () => {
    const sid = (created as { session_id: string }).session_id;
    const { impl, calls } = mockFetch({
      "POST http://svc/v1/sessions": { status: 201, body: created },
      [`POST http://svc/v1/sessions/${sid}/constraints`]: { status: 200, body: afterFix },
    });
    const client = new Client("http://svc", impl);
    const doc = await client.createSession(4, [
      { label: [1, 2], value: 0.639, provenance: "estimated" },
    ]);
    expect(doc.session_id).toBe(sid);
    const updated = await client.fixTau(sid, [1, 4], 0.598);
    expect(updated.constraints.map((c) => c.label)).toContainEqual([1, 4]);
    const sent = JSON.parse(String(calls[1]!.init!.body));
    expect(sent).toEqual({ label: [1, 4], tau: 0.598 });
  });

  it("raises ApiError with the parsed payload on 409", async () => {
    const sid = "abc";
    const { impl } = mockFetch({
      [`POST http://svc/v1/sessions/${sid}/constraints`]: {
        status: 409,
        body: rejected.body,
      },
    });
    const client = new Client("http://svc", impl);
    await expect(client.fixTau(sid, [2, 4], 0.84)).rejects.toMatchObject({
      status: 409,
      payload: { code: "constraint_rejected" },
    });
    try {
      await client.fixTau(sid, [2, 4], 0.84);
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
    }
  });

  it("requests projected vertices for target labels", async () => {
    const { impl, calls } = mockFetch({
      "POST http://svc/v1/vertices": { status: 200, body: vertices },
    });
    const client = new Client("http://svc", impl);
    const signature = SessionDoc.parse(afterFix).signature;
    const doc = await client.vertices(signature, [
      [2, 4],
      [3, 4],
    ]);
    expect(doc.projection!.length).toBe(doc.vertices.length);
    const sent = JSON.parse(String(calls[0]!.init!.body));
    expect(sent.targets).toEqual([
      [2, 4],
      [3, 4],
    ]);
    expect(sent.labels).toEqual(signature.labels);
  });
});
