// Fixed team colors so repeated solves of the same instance look the same.

const PALETTE = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
  "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a",
  "#637939", "#7b4173", "#3182bd", "#e6550d",
];

export function teamColor(teamIndex: number): string {
  return PALETTE[teamIndex % PALETTE.length];
}
