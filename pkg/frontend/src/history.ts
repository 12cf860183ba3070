/** View-model helpers for the metric history chart. */

import type { HistoryPoint } from "./api.js";

export interface ChartSeries {
  /** One x per history record, in record order. */
  x: number[];
  /** Metric value per record; null values (undefined metrics) are kept. */
  y: (number | null)[];
}

/**
 * One chart point per history record — records are never merged or
 * dropped, so the chart point count always equals the record count.
 */
export function toChartSeries(points: HistoryPoint[]): ChartSeries {
  return {
    x: points.map((p) => p.timestamp),
    y: points.map((p) => p.value),
  };
}

export function pointCount(series: ChartSeries): number {
  return series.x.length;
}
