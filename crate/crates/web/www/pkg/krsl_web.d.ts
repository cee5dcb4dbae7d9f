/* tslint:disable */
/* eslint-disable */

/**
 * Graded dimension of a standard graph for each `n` in `n_min..=n_max`,
 * with the skein value for closed graphs.
 */
export function graph_gdims(name: string, n_min: number, n_max: number): string;

/**
 * Names of the built-in graphs, as a JSON array.
 */
export function graph_names(): string;

/**
 * Homology table of a braid closure or PD code.
 */
export function link_homology(input: string, n: number): string;

/**
 * `[i]` for `i` in `0..=up_to` and the specialized HOMFLY polynomial of `input`.
 */
export function quantum_and_homfly(input: string, n: number, up_to: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly graph_gdims: (a: number, b: number, c: number, d: number) => [number, number];
    readonly graph_names: () => [number, number];
    readonly link_homology: (a: number, b: number, c: number) => [number, number];
    readonly quantum_and_homfly: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
