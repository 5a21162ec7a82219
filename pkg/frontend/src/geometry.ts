/** Geometry for projection panes: 2-D hulls, hit testing, 3-D rotation.
 *
 * All numerical authority lives server-side; this module only renders the
 * vertex clouds the server returns and hit-tests the analyst's probe point
 * against their convex hull.
 */

export type Point2 = readonly [number, number];
export type Point3 = readonly [number, number, number];

/** Andrew monotone chain; returns hull vertices in counter-clockwise order. */
export function convexHull2D(points: readonly Point2[]): Point2[] {
  const pts = [...points].sort((a, b) => (a[0] - b[0]) || (a[1] - b[1]));
  const uniq: Point2[] = [];
  for (const p of pts) {
    const last = uniq[uniq.length - 1];
    if (!last || Math.abs(last[0] - p[0]) > 1e-15 || Math.abs(last[1] - p[1]) > 1e-15) {
      uniq.push(p);
    }
  }
  if (uniq.length <= 2) return uniq;
  const cross = (o: Point2, a: Point2, b: Point2) =>
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  const lower: Point2[] = [];
  for (const p of uniq) {
    while (lower.length >= 2 && cross(lower[lower.length - 2]!, lower[lower.length - 1]!, p) <= 0) {
      lower.pop();
    }
    lower.push(p);
  }
  const upper: Point2[] = [];
  for (let i = uniq.length - 1; i >= 0; i--) {
    const p = uniq[i]!;
    while (upper.length >= 2 && cross(upper[upper.length - 2]!, upper[upper.length - 1]!, p) <= 0) {
      upper.pop();
    }
    upper.push(p);
  }
  lower.pop();
  upper.pop();
  return lower.concat(upper);
}

export function polygonArea(hull: readonly Point2[]): number {
  let area = 0;
  for (let i = 0; i < hull.length; i++) {
    const [x1, y1] = hull[i]!;
    const [x2, y2] = hull[(i + 1) % hull.length]!;
    area += x1 * y2 - x2 * y1;
  }
  return Math.abs(area) / 2;
}

export interface Box {
  min: number[];
  max: number[];
}

export function boundingBox(points: readonly (readonly number[])[]): Box {
  if (points.length === 0) return { min: [], max: [] };
  const dim = points[0]!.length;
  const min = new Array(dim).fill(Infinity);
  const max = new Array(dim).fill(-Infinity);
  for (const p of points) {
    for (let i = 0; i < dim; i++) {
      min[i] = Math.min(min[i], p[i]!);
      max[i] = Math.max(max[i], p[i]!);
    }
  }
  return { min, max };
}

export function pointInPolygon(point: Point2, hull: readonly Point2[], tol = 1e-9): boolean {
  if (hull.length < 3) {
    // degenerate region: fall back to distance from the segment/point
    if (hull.length === 0) return false;
    if (hull.length === 1) {
      return Math.hypot(point[0] - hull[0]![0], point[1] - hull[0]![1]) <= tol;
    }
    return distanceToSegment(point, hull[0]!, hull[1]!) <= tol;
  }
  // hull is counter-clockwise: inside iff never strictly right of an edge
  for (let i = 0; i < hull.length; i++) {
    const a = hull[i]!;
    const b = hull[(i + 1) % hull.length]!;
    const cross = (b[0] - a[0]) * (point[1] - a[1]) - (b[1] - a[1]) * (point[0] - a[0]);
    if (cross < -tol) return false;
  }
  return true;
}

function distanceToSegment(p: Point2, a: Point2, b: Point2): number {
  const vx = b[0] - a[0];
  const vy = b[1] - a[1];
  const wx = p[0] - a[0];
  const wy = p[1] - a[1];
  const c1 = vx * wx + vy * wy;
  const c2 = vx * vx + vy * vy;
  const t = c2 > 0 ? Math.max(0, Math.min(1, c1 / c2)) : 0;
  return Math.hypot(p[0] - (a[0] + t * vx), p[1] - (a[1] + t * vy));
}

/**
 * Is x a convex combination of the given points?  Solved as a small
 * phase-1 simplex (the one piece of client-side math the probe needs).
 */
export function hullContains(points: readonly (readonly number[])[], x: readonly number[], tol = 1e-8): boolean {
  const n = points.length;
  if (n === 0) return false;
  const dim = x.length;
  const m = dim + 1; // equality rows: coordinates plus the sum-to-one row
  // tableau with artificial basis: [A | I | b], minimize sum of artificials
  const A: number[][] = [];
  const b: number[] = [];
  for (let i = 0; i < dim; i++) {
    A.push(points.map((p) => p[i]!));
    b.push(x[i]!);
  }
  A.push(new Array(n).fill(1));
  b.push(1);
  for (let i = 0; i < m; i++) {
    if (b[i]! < 0) {
      b[i] = -b[i]!;
      A[i] = A[i]!.map((v) => -v);
    }
  }
  const width = n + m + 1;
  const T: number[][] = [];
  for (let i = 0; i < m; i++) {
    const row = new Array(width).fill(0);
    for (let j = 0; j < n; j++) row[j] = A[i]![j]!;
    row[n + i] = 1;
    row[width - 1] = b[i]!;
    T.push(row);
  }
  const cost = new Array(width).fill(0);
  for (let j = 0; j < n; j++) {
    let s = 0;
    for (let i = 0; i < m; i++) s += T[i]![j]!;
    cost[j] = -s;
  }
  let rhs = 0;
  for (let i = 0; i < m; i++) rhs += T[i]![width - 1]!;
  cost[width - 1] = -rhs;
  T.push(cost);
  const basis = Array.from({ length: m }, (_, i) => n + i);

  const maxIter = 200 * (m + n);
  for (let iter = 0; iter < maxIter; iter++) {
    let enter = -1;
    for (let j = 0; j < n + m; j++) {
      if (T[m]![j]! < -1e-10) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    let leave = -1;
    let best = Infinity;
    for (let i = 0; i < m; i++) {
      const a = T[i]![enter]!;
      if (a > 1e-10) {
        const ratio = T[i]![width - 1]! / a;
        if (ratio < best - 1e-12 || (Math.abs(ratio - best) <= 1e-12 && (leave < 0 || basis[i]! < basis[leave]!))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) break;
    const piv = T[leave]![enter]!;
    for (let j = 0; j < width; j++) T[leave]![j] = T[leave]![j]! / piv;
    for (let i = 0; i <= m; i++) {
      if (i === leave) continue;
      const f = T[i]![enter]!;
      if (f === 0) continue;
      for (let j = 0; j < width; j++) T[i]![j] = T[i]![j]! - f * T[leave]![j]!;
    }
    basis[leave] = enter;
  }
  return -T[m]![width - 1]! <= tol;
}

/** Rotate-and-project 3-D points for the orbiting hull pane. */
export function project3D(points: readonly Point3[], yaw: number, pitch: number): Point2[] {
  const cy = Math.cos(yaw);
  const sy = Math.sin(yaw);
  const cp = Math.cos(pitch);
  const sp = Math.sin(pitch);
  return points.map(([x, y, z]) => {
    const x1 = cy * x + sy * z;
    const z1 = -sy * x + cy * z;
    const y1 = cp * y - sp * z1;
    return [x1, y1] as const;
  });
}
