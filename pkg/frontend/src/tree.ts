/** View-model helpers for the class-hierarchy browser. */

import type { TreeNode } from "./api.js";

export interface TreeRow {
  iri: string;
  label: string;
  depth: number;
  hasChildren: boolean;
}

/** Total number of nodes in the forest (a class appears once per parent). */
export function countNodes(roots: TreeNode[]): number {
  let n = 0;
  const stack = [...roots];
  while (stack.length > 0) {
    const node = stack.pop()!;
    n += 1;
    stack.push(...node.children);
  }
  return n;
}

/** Depth-first flattening in server order, for rendering as indented rows. */
export function flattenTree(roots: TreeNode[]): TreeRow[] {
  const rows: TreeRow[] = [];
  const visit = (node: TreeNode, depth: number) => {
    rows.push({
      iri: node.iri,
      label: node.label,
      depth,
      hasChildren: node.children.length > 0,
    });
    for (const child of node.children) visit(child, depth + 1);
  };
  for (const root of roots) visit(root, 0);
  return rows;
}
