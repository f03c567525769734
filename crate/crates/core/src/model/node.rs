/// Untyped element tree: the common shape shared by the XML codec, rule
/// templates, fragment merging and the corpus index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub name: String,
    pub content: Content,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Content {
    Text(String),
    Children(Vec<Node>),
}

impl Node {
    pub fn leaf(name: impl Into<String>, text: impl Into<String>) -> Node {
        Node { name: name.into(), content: Content::Text(text.into()) }
    }

    pub fn branch(name: impl Into<String>, children: Vec<Node>) -> Node {
        Node { name: name.into(), content: Content::Children(children) }
    }

    pub fn text(&self) -> Option<&str> {
        match &self.content {
            Content::Text(t) => Some(t),
            Content::Children(_) => None,
        }
    }

    pub fn children(&self) -> &[Node] {
        match &self.content {
            Content::Children(c) => c,
            Content::Text(_) => &[],
        }
    }

    pub fn children_mut(&mut self) -> Option<&mut Vec<Node>> {
        match &mut self.content {
            Content::Children(c) => Some(c),
            Content::Text(_) => None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.content, Content::Text(_))
    }

    pub fn child(&self, name: &str) -> Option<&Node> {
        self.children().iter().find(|c| c.name == name)
    }

    /// All nodes reached by following `path` from this node's children.
    pub fn select<'a>(&'a self, path: &[&str]) -> Vec<&'a Node> {
        let mut current = vec![self];
        for seg in path {
            current = current
                .into_iter()
                .flat_map(|n| n.children().iter().filter(|c| c.name == *seg))
                .collect();
        }
        current
    }

    /// Text of every leaf below this node, keyed by its `/`-joined path
    /// relative to this node, in document order.
    pub fn leaves(&self) -> Vec<(String, &str)> {
        fn walk<'a>(node: &'a Node, prefix: &str, out: &mut Vec<(String, &'a str)>) {
            for c in node.children() {
                let path = if prefix.is_empty() {
                    c.name.clone()
                } else {
                    format!("{prefix}/{}", c.name)
                };
                match &c.content {
                    Content::Text(t) => out.push((path, t)),
                    Content::Children(_) => walk(c, &path, out),
                }
            }
        }
        let mut out = Vec::new();
        walk(self, "", &mut out);
        out
    }
}
