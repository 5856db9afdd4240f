// Deterministic layouts: a fixed-budget force simulation for the node-link
// diagram and ring positioning for the target-to-all view. No randomness,
// so the same payload always renders the same picture.

export interface Point {
  x: number;
  y: number;
}

export function forceLayout(
  ids: string[],
  edges: Array<[string, string]>,
  width: number,
  height: number,
  iterations = 150,
): Map<string, Point> {
  const n = ids.length;
  const positions = new Map<string, Point>();
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 30;
  ids.forEach((id, k) => {
    const angle = (2 * Math.PI * k) / Math.max(1, n);
    positions.set(id, { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  });
  if (n <= 1) return positions;

  const index = new Map(ids.map((id, k) => [id, k]));
  const xs = ids.map((id) => positions.get(id)!.x);
  const ys = ids.map((id) => positions.get(id)!.y);
  const edgeIdx = edges.map(([a, b]) => [index.get(a)!, index.get(b)!] as [number, number]);

  const area = width * height;
  const k = Math.sqrt(area / n) * 0.6;
  let temperature = Math.min(width, height) / 8;
  const cooling = temperature / (iterations + 1);

  for (let step = 0; step < iterations; step++) {
    const dx = new Array<number>(n).fill(0);
    const dy = new Array<number>(n).fill(0);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let vx = xs[i] - xs[j];
        let vy = ys[i] - ys[j];
        let dist = Math.hypot(vx, vy);
        if (dist < 0.01) {
          // deterministic symmetry breaking by index
          vx = 0.01 * (i - j);
          vy = 0.01;
          dist = Math.hypot(vx, vy);
        }
        const repulse = (k * k) / dist;
        dx[i] += (vx / dist) * repulse;
        dy[i] += (vy / dist) * repulse;
        dx[j] -= (vx / dist) * repulse;
        dy[j] -= (vy / dist) * repulse;
      }
    }
    for (const [i, j] of edgeIdx) {
      const vx = xs[i] - xs[j];
      const vy = ys[i] - ys[j];
      const dist = Math.max(0.01, Math.hypot(vx, vy));
      const attract = (dist * dist) / k;
      dx[i] -= (vx / dist) * attract;
      dy[i] -= (vy / dist) * attract;
      dx[j] += (vx / dist) * attract;
      dy[j] += (vy / dist) * attract;
    }
    for (let i = 0; i < n; i++) {
      const disp = Math.max(0.01, Math.hypot(dx[i], dy[i]));
      const limited = Math.min(disp, temperature);
      xs[i] += (dx[i] / disp) * limited;
      ys[i] += (dy[i] / disp) * limited;
      xs[i] = Math.min(width - 30, Math.max(30, xs[i]));
      ys[i] = Math.min(height - 30, Math.max(30, ys[i]));
    }
    temperature -= cooling;
  }
  ids.forEach((id, i) => positions.set(id, { x: xs[i], y: ys[i] }));
  return positions;
}

export function ringPosition(
  index: number,
  total: number,
  cx: number,
  cy: number,
  radius: number,
): Point {
  const angle = (2 * Math.PI * index) / Math.max(1, total) - Math.PI / 2;
  return { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
}
