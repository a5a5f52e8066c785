// Small DOM helpers; no framework, plain elements all the way down.

const SVG_NS = "http://www.w3.org/2000/svg";

type Attrs = Record<string, string | number>;

function applyAttrs(node: Element, attrs: Attrs): void {
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
}

export function el(
  tag: string,
  attrs: Attrs = {},
  children: (Element | string)[] = [],
): HTMLElement {
  const node = document.createElement(tag);
  applyAttrs(node, attrs);
  for (const child of children) {
    node.append(child instanceof Element ? child : document.createTextNode(child));
  }
  return node;
}

export function svg(
  tag: string,
  attrs: Attrs = {},
  children: (Element | string)[] = [],
): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  applyAttrs(node, attrs);
  for (const child of children) {
    node.append(child instanceof Element ? child : document.createTextNode(child));
  }
  return node;
}

export function clear(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}
