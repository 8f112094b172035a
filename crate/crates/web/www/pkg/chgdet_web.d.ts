/* tslint:disable */
/* eslint-disable */

/**
 * Distribution of the number of points in (−s, s).
 */
export function counting_pmf(alpha: number, beta_im: number, s: number): string;

export function det_curve(alpha: number, beta_im: number, gamma: number, s_max: number, points: number): string;

/**
 * Real and imaginary parts of the Hamiltonian H(t) from t0 to t = 4s.
 */
export function painleve_trajectory(alpha: number, beta_im: number, gamma: number, s: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly counting_pmf: (a: number, b: number, c: number) => [number, number, number, number];
    readonly det_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly painleve_trajectory: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
