// Canvas drawing for the map panel. Everything rendered here comes from the
// application state; costs and arrivals are server numbers verbatim.

import { HALF_EDGE_KM, kmToPixel, Viewport } from "./mapping.js";
import { teamColor } from "./palette.js";
import type { AppState } from "./state.js";
import { routePolylines } from "./state.js";

export function drawMap(ctx: CanvasRenderingContext2D, state: AppState,
                        view: Viewport): void {
  ctx.clearRect(0, 0, view.width, view.height);

  ctx.fillStyle = "#fbfbf8";
  ctx.fillRect(0, 0, view.width, view.height);
  ctx.strokeStyle = "#d9d4c7";
  ctx.lineWidth = 1;
  for (let km = -HALF_EDGE_KM; km <= HALF_EDGE_KM; km += 5) {
    const v = kmToPixel({ x: km, y: 0 }, view);
    const h = kmToPixel({ x: 0, y: km }, view);
    ctx.beginPath();
    ctx.moveTo(v.x, 0);
    ctx.lineTo(v.x, view.height);
    ctx.stroke();
    ctx.beginPath();
    ctx.moveTo(0, h.y);
    ctx.lineTo(view.width, h.y);
    ctx.stroke();
  }

  for (const [team, line] of routePolylines(state).entries()) {
    ctx.strokeStyle = teamColor(team);
    ctx.lineWidth = 2;
    ctx.beginPath();
    line.forEach((pt, i) => {
      const px = kmToPixel(pt, view);
      if (i === 0) ctx.moveTo(px.x, px.y);
      else ctx.lineTo(px.x, px.y);
    });
    ctx.stroke();
  }

  state.customers.forEach((c, i) => {
    const px = kmToPixel(c, view);
    ctx.fillStyle = "#2b2b2b";
    ctx.beginPath();
    ctx.arc(px.x, px.y, 4, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#555";
    ctx.font = "11px sans-serif";
    ctx.fillText(String(i + 1), px.x + 6, px.y - 6);
  });

  const depot = kmToPixel({ x: 0, y: 0 }, view);
  ctx.fillStyle = "#d62728";
  ctx.beginPath();
  ctx.arc(depot.x, depot.y, 6, 0, 2 * Math.PI);
  ctx.fill();
}

export function formatKm(value: number): string {
  return value.toFixed(2);
}

export function formatMinutes(value: number | null): string {
  return value === null ? "-" : value.toFixed(1);
}

export function formatCurrency(value: number): string {
  return value.toFixed(2);
}
