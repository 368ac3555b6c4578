/** Fixed styling so regenerated figures are byte-stable and diffable. */

export const THEME = {
  width: 760,
  height: 420,
  margin: { top: 36, right: 24, bottom: 52, left: 64 },
  background: "#ffffff",
  axisColor: "#444444",
  gridColor: "#dddddd",
  fontFamily: "Helvetica, Arial, sans-serif",
  fontSize: 12,
  titleSize: 14,
  bandOpacity: "0.18",
  boxWidth: 34,
  palette: [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
  ],
} as const;

export function seriesColor(index: number): string {
  return THEME.palette[index % THEME.palette.length];
}
