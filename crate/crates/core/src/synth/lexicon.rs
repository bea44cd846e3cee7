//! Word table for the scripted generator. Each row is an English synonym set
//! (first form used in seeds) followed by Spanish, French, German, Italian and
//! Portuguese renderings.

pub(super) const LANGUAGES: [&str; 5] = ["es", "fr", "de", "it", "pt"];

pub(super) struct Entry {
    pub english: &'static [&'static str],
    pub foreign: [&'static str; 5],
}

macro_rules! entries {
    ($( [$($en:literal),+] => [$es:literal, $fr:literal, $de:literal, $it:literal, $pt:literal] ),+ $(,)?) => {
        &[$(Entry { english: &[$($en),+], foreign: [$es, $fr, $de, $it, $pt] }),+]
    };
}

pub(super) const WORDS: &[Entry] = entries![
    ["people", "citizens", "folks"] => ["gente", "peuple", "leute", "persone", "povo"],
    ["government", "administration", "regime"] => ["gobierno", "gouvernement", "regierung", "governo", "governança"],
    ["president", "leader", "head"] => ["presidente", "président", "präsident", "presidente", "presidente"],
    ["freedom", "liberty", "independence"] => ["libertad", "liberté", "freiheit", "libertà", "liberdade"],
    ["country", "nation", "homeland"] => ["país", "pays", "land", "paese", "nação"],
    ["city", "town", "metropolis"] => ["ciudad", "ville", "stadt", "città", "cidade"],
    ["election", "vote", "ballot"] => ["elección", "élection", "wahl", "elezione", "eleição"],
    ["support", "back", "endorse"] => ["apoyar", "soutenir", "unterstützen", "sostenere", "apoiar"],
    ["truth", "facts", "reality"] => ["verdad", "vérité", "wahrheit", "verità", "verdade"],
    ["justice", "fairness", "equity"] => ["justicia", "justice", "gerechtigkeit", "giustizia", "justiça"],
    ["today", "now", "currently"] => ["hoy", "aujourd", "heute", "oggi", "hoje"],
    ["tomorrow", "soon", "shortly"] => ["mañana", "demain", "morgen", "domani", "amanhã"],
    ["yesterday", "recently", "lately"] => ["ayer", "hier", "gestern", "ieri", "ontem"],
    ["strong", "powerful", "mighty"] => ["fuerte", "fort", "stark", "forte", "forte"],
    ["weak", "feeble", "fragile"] => ["débil", "faible", "schwach", "debole", "fraco"],
    ["big", "large", "huge"] => ["grande", "grand", "groß", "grande", "grande"],
    ["small", "little", "tiny"] => ["pequeño", "petit", "klein", "piccolo", "pequeno"],
    ["new", "fresh", "novel"] => ["nuevo", "nouveau", "neu", "nuovo", "novo"],
    ["old", "ancient", "aged"] => ["viejo", "vieux", "alt", "vecchio", "velho"],
    ["good", "great", "excellent"] => ["bueno", "bon", "gut", "buono", "bom"],
    ["bad", "terrible", "awful"] => ["malo", "mauvais", "schlecht", "cattivo", "ruim"],
    ["happy", "joyful", "glad"] => ["feliz", "heureux", "glücklich", "felice", "feliz"],
    ["angry", "furious", "upset"] => ["enojado", "fâché", "wütend", "arrabbiato", "zangado"],
    ["future", "tomorrow's", "destiny"] => ["futuro", "avenir", "zukunft", "futuro", "futuro"],
    ["history", "past", "legacy"] => ["historia", "histoire", "geschichte", "storia", "história"],
    ["family", "relatives", "kin"] => ["familia", "famille", "familie", "famiglia", "família"],
    ["children", "kids", "youngsters"] => ["niños", "enfants", "kinder", "bambini", "crianças"],
    ["workers", "laborers", "employees"] => ["trabajadores", "travailleurs", "arbeiter", "lavoratori", "trabalhadores"],
    ["money", "cash", "funds"] => ["dinero", "argent", "geld", "denaro", "dinheiro"],
    ["market", "economy", "trade"] => ["mercado", "marché", "markt", "mercato", "mercado"],
    ["price", "cost", "value"] => ["precio", "prix", "preis", "prezzo", "preço"],
    ["water", "rivers", "springs"] => ["agua", "eau", "wasser", "acqua", "água"],
    ["fire", "flames", "blaze"] => ["fuego", "feu", "feuer", "fuoco", "fogo"],
    ["storm", "hurricane", "tempest"] => ["tormenta", "tempête", "sturm", "tempesta", "tempestade"],
    ["earthquake", "tremor", "quake"] => ["terremoto", "séisme", "erdbeben", "terremoto", "terremoto"],
    ["flood", "deluge", "inundation"] => ["inundación", "inondation", "überschwemmung", "alluvione", "enchente"],
    ["disaster", "catastrophe", "calamity"] => ["desastre", "catastrophe", "katastrophe", "disastro", "desastre"],
    ["rescue", "relief", "aid"] => ["rescate", "secours", "rettung", "soccorso", "resgate"],
    ["hospital", "clinic", "infirmary"] => ["hospital", "hôpital", "krankenhaus", "ospedale", "hospital"],
    ["doctor", "physician", "medic"] => ["médico", "médecin", "arzt", "medico", "médico"],
    ["school", "academy", "college"] => ["escuela", "école", "schule", "scuola", "escola"],
    ["teacher", "educator", "instructor"] => ["maestro", "enseignant", "lehrer", "insegnante", "professor"],
    ["student", "pupil", "learner"] => ["estudiante", "étudiant", "schüler", "studente", "aluno"],
    ["book", "novel", "volume"] => ["libro", "livre", "buch", "libro", "livro"],
    ["story", "tale", "narrative"] => ["cuento", "récit", "erzählung", "racconto", "conto"],
    ["author", "writer", "novelist"] => ["autor", "auteur", "schriftsteller", "autore", "escritor"],
    ["reader", "audience", "public"] => ["lector", "lecteur", "leser", "lettore", "leitor"],
    ["movie", "film", "picture"] => ["película", "cinéma", "kinofilm", "pellicola", "filme"],
    ["music", "songs", "melodies"] => ["música", "musique", "musik", "musica", "música"],
    ["party", "celebration", "festival"] => ["fiesta", "fête", "feier", "festa", "festa"],
    ["beer", "ale", "lager"] => ["cerveza", "bière", "bier", "birra", "cerveja"],
    ["drink", "beverage", "refreshment"] => ["bebida", "boisson", "getränk", "bevanda", "bebida"],
    ["food", "meals", "cuisine"] => ["comida", "nourriture", "essen", "cibo", "comida"],
    ["house", "home", "residence"] => ["casa", "maison", "haus", "casa", "casa"],
    ["street", "road", "avenue"] => ["calle", "rue", "straße", "strada", "rua"],
    ["police", "officers", "cops"] => ["policía", "police", "polizei", "polizia", "polícia"],
    ["army", "military", "troops"] => ["ejército", "armée", "armee", "esercito", "exército"],
    ["war", "conflict", "fighting"] => ["guerra", "guerre", "krieg", "guerra", "guerra"],
    ["peace", "harmony", "calm"] => ["paz", "paix", "frieden", "pace", "paz"],
    ["corruption", "graft", "bribery"] => ["corrupción", "corruption", "korruption", "corruzione", "corrupção"],
    ["prison", "jail", "detention"] => ["prisión", "prison", "gefängnis", "prigione", "prisão"],
    ["release", "liberate", "free"] => ["liberar", "libérer", "befreien", "liberare", "libertar"],
    ["demand", "insist", "require"] => ["exigir", "exiger", "fordern", "esigere", "exigir"],
    ["protest", "rally", "march"] => ["protesta", "manifestation", "protest", "protesta", "protesto"],
    ["crowd", "multitude", "throng"] => ["multitud", "foule", "menge", "folla", "multidão"],
    ["news", "reports", "headlines"] => ["noticias", "nouvelles", "nachrichten", "notizie", "notícias"],
    ["world", "globe", "planet"] => ["mundo", "monde", "welt", "mondo", "mundo"],
    ["night", "evening", "dusk"] => ["noche", "nuit", "nacht", "notte", "noite"],
    ["morning", "dawn", "sunrise"] => ["madrugada", "matin", "morgenstunde", "mattina", "manhã"],
    ["weekend", "holiday", "vacation"] => ["finde", "weekend", "wochenende", "finesettimana", "feriado"],
    ["summer", "summertime", "midsummer"] => ["verano", "été", "sommer", "estate", "verão"],
    ["winter", "wintertime", "midwinter"] => ["invierno", "hiver", "winter", "inverno", "inverno"],
    ["beautiful", "lovely", "gorgeous"] => ["hermoso", "beau", "schön", "bello", "bonito"],
    ["dangerous", "risky", "hazardous"] => ["peligroso", "dangereux", "gefährlich", "pericoloso", "perigoso"],
    ["important", "crucial", "vital"] => ["importante", "important", "wichtig", "importante", "importante"],
    ["amazing", "incredible", "astonishing"] => ["increíble", "incroyable", "unglaublich", "incredibile", "incrível"],
    ["quickly", "rapidly", "swiftly"] => ["rápidamente", "vite", "schnell", "rapidamente", "depressa"],
    ["together", "united", "jointly"] => ["juntos", "ensemble", "zusammen", "insieme", "juntos"],
    ["everyone", "everybody", "all"] => ["todos", "tous", "alle", "tutti", "todos"],
    ["never", "not once", "at no time"] => ["nunca", "jamais", "niemals", "mai", "nunca"],
    ["always", "forever", "constantly"] => ["siempre", "toujours", "immer", "sempre", "sempre"],
    ["watch", "see", "view"] => ["mirar", "regarder", "schauen", "guardare", "assistir"],
    ["listen", "hear", "heed"] => ["escuchar", "écouter", "hören", "ascoltare", "ouvir"],
    ["read", "peruse", "study"] => ["leer", "lire", "lesen", "leggere", "ler"],
    ["write", "compose", "pen"] => ["escribir", "écrire", "schreiben", "scrivere", "escrever"],
    ["build", "construct", "erect"] => ["construir", "bâtir", "bauen", "costruire", "construir"],
    ["destroy", "wreck", "ruin"] => ["destruir", "détruire", "zerstören", "distruggere", "destruir"],
    ["help", "assist", "aid"] => ["ayudar", "aider", "helfen", "aiutare", "ajudar"],
    ["win", "triumph", "prevail"] => ["ganar", "gagner", "gewinnen", "vincere", "vencer"],
    ["lose", "forfeit", "fail"] => ["perder", "perdre", "verlieren", "perdere", "perder"],
    ["fight", "struggle", "battle"] => ["luchar", "lutter", "kämpfen", "lottare", "lutar"],
    ["believe", "trust", "think"] => ["creer", "croire", "glauben", "credere", "acreditar"],
    ["remember", "recall", "recollect"] => ["recordar", "souvenir", "erinnern", "ricordare", "lembrar"],
    ["change", "transform", "alter"] => ["cambiar", "changer", "ändern", "cambiare", "mudar"],
    ["hope", "optimism", "faith"] => ["esperanza", "espoir", "hoffnung", "speranza", "esperança"],
    ["fear", "dread", "terror"] => ["miedo", "peur", "angst", "paura", "medo"],
    ["love", "affection", "devotion"] => ["amor", "amour", "liebe", "amore", "amor"],
    ["friend", "companion", "ally"] => ["amigo", "ami", "freund", "amico", "amigo"],
    ["enemy", "foe", "opponent"] => ["enemigo", "ennemi", "feind", "nemico", "inimigo"],
    ["village", "hamlet", "settlement"] => ["pueblo", "village", "dorf", "villaggio", "aldeia"],
    ["mountain", "peak", "summit"] => ["montaña", "montagne", "berg", "montagna", "montanha"],
    ["ocean", "sea", "waters"] => ["océano", "océan", "ozean", "oceano", "oceano"],
    ["forest", "woods", "jungle"] => ["bosque", "forêt", "wald", "foresta", "floresta"],
    ["road trip", "journey", "voyage"] => ["viaje", "voyage", "reise", "viaggio", "viagem"],
    ["team", "squad", "side"] => ["equipo", "équipe", "mannschaft", "squadra", "equipe"],
    ["game", "match", "contest"] => ["partido", "partie", "spiel", "partita", "jogo"],
    ["season", "series", "episode"] => ["temporada", "saison", "staffel", "stagione", "temporada"],
    ["channel", "network", "station"] => ["canal", "chaîne", "sender", "canale", "canal"],
];

/// Appended by copy-pasta variants.
pub(super) const HASHTAGS: &[&str] = &[
    "#news", "#now", "#wow", "#live", "#fyi", "#rt", "#hot", "#top", "#vote", "#go",
];

/// Inserted or removed by punctuation and emoji churn; none survive grapheme stripping.
pub(super) const DECORATIONS: &[&str] = &[
    "!", "!!", "?!", "...", "🔥", "😱", "👉", "✅", "❗", "🙏", "💥", "👀", ",", " -",
];
