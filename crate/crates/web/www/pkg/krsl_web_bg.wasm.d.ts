/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const graph_gdims: (a: number, b: number, c: number, d: number) => [number, number];
export const graph_names: () => [number, number];
export const link_homology: (a: number, b: number, c: number) => [number, number];
export const quantum_and_homfly: (a: number, b: number, c: number, d: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
