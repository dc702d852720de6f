/** Polarity color coding: positive green, negative red, neutral blue. */

export const POLARITY_COLORS: Record<number, string> = {
  1: "green",
  [-1]: "red",
  0: "blue",
};

export function polarityColor(polarity: number): string {
  return POLARITY_COLORS[polarity] ?? POLARITY_COLORS[0]!;
}
