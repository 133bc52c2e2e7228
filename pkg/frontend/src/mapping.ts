// Linear mapping between the service plane (km, depot at the origin) and
// canvas pixels. The plane is a square of HALF_EDGE km in each direction.

import type { Point } from "./types.js";

export const HALF_EDGE_KM = 25;
export const DEPOT_EXCLUSION_KM = 1;

export interface Viewport {
  width: number;
  height: number;
}

export function kmToPixel(p: Point, view: Viewport): Point {
  const scaleX = view.width / (2 * HALF_EDGE_KM);
  const scaleY = view.height / (2 * HALF_EDGE_KM);
  return {
    x: (p.x + HALF_EDGE_KM) * scaleX,
    y: (HALF_EDGE_KM - p.y) * scaleY, // canvas y grows downward
  };
}

export function pixelToKm(p: Point, view: Viewport): Point {
  const scaleX = view.width / (2 * HALF_EDGE_KM);
  const scaleY = view.height / (2 * HALF_EDGE_KM);
  return {
    x: p.x / scaleX - HALF_EDGE_KM,
    y: HALF_EDGE_KM - p.y / scaleY,
  };
}

export function insidePlane(km: Point): boolean {
  return (
    Math.abs(km.x) <= HALF_EDGE_KM && Math.abs(km.y) <= HALF_EDGE_KM
  );
}

export function insideDepotExclusion(km: Point): boolean {
  return Math.hypot(km.x, km.y) < DEPOT_EXCLUSION_KM;
}

/** Accept a click if it lands on the plane and clear of the depot marker. */
export function clickToCustomer(pixel: Point, view: Viewport): Point | null {
  const km = pixelToKm(pixel, view);
  if (!insidePlane(km) || insideDepotExclusion(km)) {
    return null;
  }
  return km;
}
