//! Fixed pools for the parts of a profile no test inspects.

pub(crate) const FIRST_NAMES: &[&str] = &[
    "Adrian",
    "Aisha",
    "Alicia",
    "Amanda",
    "Benjamin",
    "Bryan",
    "Charlotte",
    "Chloe",
    "Daniel",
    "Deepa",
    "Elaine",
    "Ethan",
    "Farhan",
    "Grace",
    "Hannah",
    "Hui Min",
    "Irfan",
    "Isabel",
    "Jia Hui",
    "Jonathan",
    "Joshua",
    "Kai Wen",
    "Kavya",
    "Li Ting",
    "Marcus",
    "Mei Ling",
    "Muhammad",
    "Nadia",
    "Nicholas",
    "Nur Aini",
    "Priya",
    "Rachel",
    "Rajesh",
    "Ryan",
    "Samuel",
    "Sarah",
    "Shu Fen",
    "Siti",
    "Vanessa",
    "Wei Jie",
    "Xin Yi",
    "Yong Sheng",
    "Zheng Hao",
];

pub(crate) const LAST_NAMES: &[&str] = &[
    "Abdullah",
    "Ang",
    "Chan",
    "Chia",
    "Chong",
    "Fernandez",
    "Goh",
    "Ho",
    "Hussain",
    "Koh",
    "Kumar",
    "Lau",
    "Lee",
    "Leong",
    "Lim",
    "Loh",
    "Low",
    "Menon",
    "Ng",
    "Ong",
    "Pillai",
    "Quek",
    "Rahman",
    "Seah",
    "Sim",
    "Singh",
    "Soh",
    "Tay",
    "Teo",
    "Toh",
    "Wee",
    "Wong",
    "Yap",
    "Yeo",
];

pub(crate) const SKILLS: &[&str] = &[
    "Communication",
    "Data Analysis",
    "Excel",
    "Java",
    "Leadership",
    "Machine Learning",
    "Microsoft Office",
    "Negotiation",
    "Project Management",
    "Public Speaking",
    "Python",
    "Research",
    "SQL",
    "Teamwork",
];

pub(crate) const CERTIFICATIONS: &[(&str, &str)] = &[
    ("AWS Certified Solutions Architect", "Amazon Web Services"),
    ("Certified Public Accountant", "ISCA"),
    ("PMP", "Project Management Institute"),
    ("CFA Level I", "CFA Institute"),
    ("Google Data Analytics Certificate", "Google"),
    ("ITIL Foundation", "Axelos"),
];

pub(crate) const SUMMARIES: &[&str] = &[
    "Analytical professional who enjoys solving practical problems.",
    "Experienced team player with a track record of delivering on time.",
    "Curious learner interested in technology and its uses in business.",
    "Detail-oriented and dependable, with a focus on quality work.",
    "Looking for opportunities to grow and take on new challenges.",
];
