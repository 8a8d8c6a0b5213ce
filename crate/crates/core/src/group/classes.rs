use super::FiniteGroup;

/// Conjugacy classes in canonical order: each class sorted ascending,
/// classes ordered by their least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMap {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ClassMap {
    pub fn new(g: &FiniteGroup) -> Self {
        let mut class_of = vec![usize::MAX; g.order()];
        let mut classes = Vec::new();
        for x in g.elements() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut class = Vec::new();
            for h in g.elements() {
                let y = g.conjugate(x, h);
                if class_of[y] == usize::MAX {
                    class_of[y] = idx;
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        Self { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }
}

impl FiniteGroup {
    pub fn conjugacy_classes(&self) -> ClassMap {
        ClassMap::new(self)
    }
}
