/** Pure SVG builders for the projection panes and the tau grid.
 *
 * Everything returns strings or plain descriptors so the DOM layer stays a
 * thin shell and the tests can assert on geometry without a browser.
 */

import { display } from "./convert.js";
import {
  Box,
  Point2,
  boundingBox,
  convexHull2D,
  pointInPolygon,
  polygonArea,
  project3D,
} from "./geometry.js";
import type { GridCell } from "./state.js";

export interface Region2D {
  hull: Point2[];
  box: Box;
  area: number;
  empty: boolean;
  pathData: string;
  pointCloudOnly: boolean;
}

const HULL_RENDER_CAP = 200;

/** Build the drawable region for two target labels from projected vertices. */
export function buildRegion2D(points: readonly Point2[]): Region2D {
  const hull = convexHull2D(points);
  const box = boundingBox(points);
  const area = hull.length >= 3 ? polygonArea(hull) : 0;
  const pointCloudOnly = points.length > HULL_RENDER_CAP;
  return {
    hull,
    box,
    area,
    empty: points.length === 0,
    pathData: pathFrom(hull),
    pointCloudOnly,
  };
}

export function pathFrom(hull: readonly Point2[]): string {
  if (hull.length === 0) return "";
  const [first, ...rest] = hull;
  const move = `M ${first![0]} ${first![1]}`;
  const lines = rest.map(([x, y]) => `L ${x} ${y}`).join(" ");
  return hull.length === 1 ? move : `${move} ${lines} Z`;
}

export interface ProbeStatus {
  inside: boolean;
  point: Point2;
}

export function probeStatus(region: Region2D, point: Point2): ProbeStatus {
  return { inside: pointInPolygon(point, region.hull, 1e-9), point };
}

/** Silhouette of a rotating 3-D vertex cloud for the orbit pane. */
export function silhouette(points: readonly (readonly [number, number, number])[], yaw: number, pitch: number): Region2D {
  return buildRegion2D(project3D(points, yaw, pitch));
}

export interface CellView {
  id: string;
  text: string;
  cssClass: string;
  title: string;
}

export function cellView(cell: GridCell): CellView {
  const id = cell.label.join(",");
  if (cell.kind === "fixed") {
    return {
      id,
      text: display(cell.value!),
      cssClass: `cell fixed ${cell.provenance ?? ""}`.trim(),
      title: `tau(${id}) fixed at ${display(cell.value!)} (${cell.provenance})`,
    };
  }
  const lo = display(cell.lower!);
  const hi = display(cell.upper!);
  return {
    id,
    text: `[${lo}, ${hi}]`,
    cssClass: "cell open",
    title: `tau(${id}) attainable within [${lo}, ${hi}]`,
  };
}

/** Map data coordinates into an SVG viewport with a small margin. */
export function viewportTransform(box: Box, width: number, height: number, margin = 12) {
  const spanX = Math.max(box.max[0]! - box.min[0]!, 1e-9);
  const spanY = Math.max(box.max[1]! - box.min[1]!, 1e-9);
  const sx = (width - 2 * margin) / spanX;
  const sy = (height - 2 * margin) / spanY;
  return (p: Point2): Point2 => [
    margin + (p[0] - box.min[0]!) * sx,
    height - margin - (p[1] - box.min[1]!) * sy,
  ];
}
